#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "llcartan/mink.hpp"

using namespace llcartan;
using namespace llcartan::mink;

TEST_CASE("null basis Gram matrix") {
  for (int m : {2, 3, 4}) {
    const MatrixXd s = s_matrix(m);
    CHECK((s * s - MatrixXd::Identity(m + 2, m + 2)).norm() == doctest::Approx(0.0));
    // the concrete basis vectors realize S in canonical coordinates
    const MatrixXd c = basis_matrix(m);
    MatrixXd gcan = MatrixXd::Identity(m + 2, m + 2);
    gcan(0, 0) = -1.0;
    CHECK((c.transpose() * gcan * c - s).cwiseAbs().maxCoeff() < 1e-14);
    // the null vector of the basis is future pointing
    CHECK(c(0, 0) > 0.0);
  }
}

TEST_CASE("basis change preserves inner products and round-trips") {
  Rng rng(11);
  for (int m : {2, 3}) {
    Convention can{m, BasisKind::Canonical};
    for (int k = 0; k < 50; ++k) {
      const Vector u(rng.gaussian_vec(m + 2), can);
      const Vector v(rng.gaussian_vec(m + 2), can);
      const Vector us = basis_change(u, BasisKind::SBasis);
      const Vector vs = basis_change(v, BasisKind::SBasis);
      CHECK(inner(u, v) == doctest::Approx(inner(us, vs)).epsilon(1e-12));
      const Vector back = basis_change(us, BasisKind::Canonical);
      CHECK((back.coords - u.coords).norm() < 1e-12);
    }
  }
}

TEST_CASE("cone embedding and projection") {
  Rng rng(5);
  const int m = 3;
  for (int k = 0; k < 30; ++k) {
    VectorXd x = rng.gaussian_vec(m + 1);
    x.normalize();
    const double s = rng.uniform(0.2, 3.0);
    const ConePoint p = cone_embed(x, s);
    CHECK(is_lightlike(p.v));
    CHECK(p.v[0] == doctest::Approx(s));
    CHECK((project_to_sphere(p) - x).norm() < 1e-12);
  }
  // non-null vectors are rejected
  VectorXd bad = VectorXd::Zero(m + 2);
  bad[0] = 1.0;
  CHECK(!is_lightlike(bad));
}

TEST_CASE("cone metric is degenerate exactly along the position field") {
  Rng rng(17);
  const int m = 2;
  VectorXd x = rng.gaussian_vec(m + 1);
  x.normalize();
  const ConePoint p = cone_embed(x, 1.3);
  // tangent vectors: position field plus sphere directions scaled to stay
  // tangent to the cone
  auto tangent = [&](const VectorXd& dx) {
    // curve s(1, x + t dx)/|x + t dx| has derivative tangent to the cone
    VectorXd w(m + 2);
    const VectorXd proj = dx - x.dot(dx) * x;
    w[0] = 0.0;
    w.tail(m + 1) = 1.3 * proj;
    return w;
  };
  const VectorXd w1 = tangent(rng.gaussian_vec(m + 1));
  const VectorXd w2 = tangent(rng.gaussian_vec(m + 1));
  const double h12 = cone_metric(p, w1, w2);
  // matches the ambient product
  double amb = w1.tail(m + 1).dot(w2.tail(m + 1)) - w1[0] * w2[0];
  CHECK(h12 == doctest::Approx(amb).epsilon(1e-10));
  // the position field is in the radical
  CHECK(cone_metric(p, p.v, w1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(cone_metric(p, p.v, p.v) == doctest::Approx(0.0).epsilon(1e-10));
}
