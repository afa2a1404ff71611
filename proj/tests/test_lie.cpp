#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "llcartan/lie.hpp"

using namespace llcartan;
using namespace llcartan::lie;

TEST_CASE("algebra membership and vectorization round trip") {
  Rng rng(3);
  for (int m : {2, 3, 4}) {
    for (int k = 0; k < 20; ++k) {
      const Algebra y = random_algebra(m, rng);
      const MatrixXd mat = y.matrix();
      // infinitesimal isometry of the S-basis Gram matrix
      const MatrixXd s = mink::s_matrix(m);
      CHECK((mat.transpose() * s + s * mat).norm() < 1e-12);
      const Algebra back = Algebra::from_matrix(mat);
      CHECK((back.matrix() - mat).norm() < 1e-13);
      const Algebra fromvec = Algebra::from_vector(m, y.vectorize());
      CHECK((fromvec.matrix() - mat).norm() < 1e-13);
    }
  }
}

TEST_CASE("bracket equals the matrix commutator") {
  Rng rng(7);
  for (int m : {2, 3, 4}) {
    for (int k = 0; k < 50; ++k) {
      const Algebra y1 = random_algebra(m, rng), y2 = random_algebra(m, rng);
      const MatrixXd comm =
          y1.matrix() * y2.matrix() - y2.matrix() * y1.matrix();
      CHECK((bracket(y1, y2).matrix() - comm).norm() < 1e-12);
    }
  }
}

TEST_CASE("grading relations under the grading element") {
  Rng rng(9);
  for (int m : {2, 3}) {
    const Algebra e = Algebra::grading_element(m);
    for (int k = 0; k < 20; ++k) {
      const Algebra y = random_algebra(m, rng);
      // [E, y] = -1 * (g_{-1} slot) + 0 + 1 * (g_1 slot)
      const Algebra expect =
          (-1.0) * y.minus_one_part() + y.one_part();
      CHECK((bracket(e, y) - expect).norm() < 1e-12);
      // closure of the grading: [g_i, g_j] lands in g_{i+j}
      const Algebra z = random_algebra(m, rng);
      CHECK(bracket(y.minus_one_part(), z.minus_one_part()).norm() < 1e-13);
      CHECK(bracket(y.one_part(), z.one_part()).norm() < 1e-13);
      const Algebra mid = bracket(y.minus_one_part(), z.one_part());
      CHECK(mid.minus_one_part().norm() < 1e-13);
      CHECK(mid.one_part().norm() < 1e-13);
    }
  }
}

TEST_CASE("Jacobi identity") {
  Rng rng(13);
  const int m = 3;
  for (int k = 0; k < 30; ++k) {
    const Algebra a = random_algebra(m, rng), b = random_algebra(m, rng),
                  c = random_algebra(m, rng);
    const Algebra j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) +
                      bracket(c, bracket(a, b));
    CHECK(j.norm() < 1e-11);
  }
}

TEST_CASE("group elements preserve the Gram matrix and the sign gauge") {
  Rng rng(21);
  for (int m : {2, 3}) {
    const MatrixXd s = mink::s_matrix(m);
    for (int k = 0; k < 20; ++k) {
      const Group g = random_group(m, rng);
      CHECK((g.mat.transpose() * s * g.mat - s).norm() < 1e-9);
      // projective representatives: sigma and -sigma normalize identically
      const Group flipped((-g.mat).eval(), m);
      CHECK((flipped.mat - g.mat).norm() < 1e-12);
      const Group prod = g * inverse(g);
      CHECK((prod.mat - Group::identity(m).mat).norm() < 1e-9);
    }
  }
}

TEST_CASE("rigid motion subgroup composes like its matrix realization") {
  Rng rng(31);
  const int m = 3;
  for (int k = 0; k < 30; ++k) {
    const HElement a = random_h_element(m, rng), b = random_h_element(m, rng);
    const MatrixXd prod = a.materialize().mat * b.materialize().mat;
    CHECK(((a * b).materialize().mat - prod).norm() < 1e-12);
  }
}

TEST_CASE("quotient adjoint action equals matrix conjugation") {
  Rng rng(43);
  for (int m : {2, 3, 4}) {
    for (int k = 0; k < 200; ++k) {
      const HElement sigma = random_h_element(m, rng);
      const Algebra y = random_algebra(m, rng);
      // oracle: conjugate the full matrix, then project to g/h
      const Algebra conj = ad_full(sigma.materialize(), y);
      const QuotVec lhs = ad_quotient(sigma, quotient_project(y));
      const QuotVec rhs = quotient_project(conj);
      CHECK(std::abs(lhs.a - rhs.a) < 1e-11);
      CHECK((lhs.X - rhs.X).norm() < 1e-11);
    }
  }
}

TEST_CASE("quotient metric is invariant under the subgroup action") {
  Rng rng(47);
  const int m = 3;
  for (int k = 0; k < 100; ++k) {
    const HElement sigma = random_h_element(m, rng);
    const QuotVec u(rng.gaussian(), rng.gaussian_vec(m));
    const QuotVec v(rng.gaussian(), rng.gaussian_vec(m));
    CHECK(quotient_metric(ad_quotient(sigma, u), ad_quotient(sigma, v)) ==
          doctest::Approx(quotient_metric(u, v)).epsilon(1e-11));
  }
}

TEST_CASE("exponential against a truncated series oracle") {
  Rng rng(51);
  const int m = 3;
  for (int k = 0; k < 20; ++k) {
    const Algebra y = random_algebra(m, rng, 0.3);
    const MatrixXd x = y.matrix();
    MatrixXd series = MatrixXd::Identity(m + 2, m + 2);
    MatrixXd term = series;
    for (int j = 1; j <= 20; ++j) {
      term = (term * x / j).eval();
      series += term;
    }
    CHECK((exp(y).mat - series).norm() < 1e-12);
  }
}

TEST_CASE("Maurer-Cartan form recovers exponential generators") {
  Rng rng(57);
  const int m = 2;
  for (int k = 0; k < 20; ++k) {
    const Algebra y = random_algebra(m, rng, 0.4);
    const Group g = exp(y);
    // left translate: xi = d/dt|0 g exp(ty) = g y
    const Algebra pulled = maurer_cartan(g, g.mat * y.matrix());
    CHECK((pulled - y).norm() < 1e-10);
  }
}

namespace {

// directional derivative of the matrix exponential, block-triangular trick
MatrixXd dexp(const MatrixXd& x, const MatrixXd& dx) {
  const int n = static_cast<int>(x.rows());
  MatrixXd b = MatrixXd::Zero(2 * n, 2 * n);
  b.topLeftCorner(n, n) = x;
  b.bottomRightCorner(n, n) = x;
  b.topRightCorner(n, n) = dx;
  return MatrixXd(b.exp()).topRightCorner(n, n);
}

}  // namespace

TEST_CASE("Maurer-Cartan structure equation by finite differences") {
  Rng rng(61);
  const int m = 2;
  double worst_ratio_lo = 10.0, worst_ratio_hi = 0.0, worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Group g0 = random_group(m, rng, 0.4);
    const Algebra y1 = random_algebra(m, rng, 0.5);
    const Algebra y2 = random_algebra(m, rng, 0.5);
    const Algebra y3 = random_algebra(m, rng, 0.5);
    auto arg = [&](double t, double u) {
      return MatrixXd((t * y1 + u * y2 + (t * u) * y3).matrix());
    };
    auto fam = [&](double t, double u) {
      return MatrixXd(g0.mat * arg(t, u).exp());
    };
    // exact partial derivatives of the family, so the only error left in the
    // structure equation is the outer central difference
    auto omega = [&](int slot, double t, double u) {
      const MatrixXd dm = slot == 0 ? MatrixXd((1.0 * y1 + u * y3).matrix())
                                    : MatrixXd((1.0 * y2 + t * y3).matrix());
      const MatrixXd xi = g0.mat * dexp(arg(t, u), dm);
      return maurer_cartan(Group(fam(t, u), m), xi, 1e-8);
    };
    auto omega_t = [&](double t, double u) { return omega(0, t, u); };
    auto omega_u = [&](double t, double u) { return omega(1, t, u); };
    auto residual = [&](double h) {
      const double t0 = 0.05, u0 = -0.04;
      const Algebra dtu =
          (1.0 / (2.0 * h)) * (omega_u(t0 + h, u0) - omega_u(t0 - h, u0));
      const Algebra dut =
          (1.0 / (2.0 * h)) * (omega_t(t0, u0 + h) - omega_t(t0, u0 - h));
      const Algebra br = bracket(omega_t(t0, u0), omega_u(t0, u0));
      return (dtu - dut + br).norm();
    };
    const double r1 = residual(1e-4);
    const double r2 = residual(5e-5);
    worst = std::max(worst, r1);
    if (r1 > 1e-9) {  // ratio meaningless at round-off level
      worst_ratio_lo = std::min(worst_ratio_lo, r1 / r2);
      worst_ratio_hi = std::max(worst_ratio_hi, r1 / r2);
    }
  }
  CHECK(worst < 1e-5);
  CHECK(worst_ratio_lo > 3.5);
  CHECK(worst_ratio_hi < 4.5);
}

TEST_CASE("cone action matches the sphere conformal factorization") {
  Rng rng(71);
  const int m = 3;
  for (int k = 0; k < 30; ++k) {
    const Group g = random_group(m, rng);
    VectorXd x = rng.gaussian_vec(m + 1);
    x.normalize();
    const double s = rng.uniform(0.3, 2.0);
    // path one: linear action on the cone point
    const mink::ConePoint moved = cone_action(g, mink::cone_embed(x, s));
    // path two: conformal map plus the scaling of the fiber coordinate
    const auto conf = sphere_conformal_from_group(g);
    const auto [xi, si] = model_isometry(conf, x, s);
    CHECK((mink::project_to_sphere(moved) - xi).norm() < 1e-10);
    CHECK(moved.v[0] == doctest::Approx(si).epsilon(1e-10));
    // the conformal factor really rescales the round metric
    const double phi = conf.log_factor(x);
    VectorXd dx = rng.gaussian_vec(m + 1);
    dx = (dx - x.dot(dx) * x).normalized() * 1e-6;
    const VectorXd y2 = (x + dx).normalized();
    const double moved_dist = (conf.phi_map(y2) - conf.phi_map(x)).norm();
    CHECK(moved_dist / dx.norm() == doctest::Approx(std::exp(phi)).epsilon(1e-4));
  }
}

TEST_CASE("quotient representation is faithful on samples") {
  const auto rep = injectivity_witness(3, 200, 2024);
  CHECK(rep.trials > 0);
  CHECK(rep.violations == 0);
  CHECK(rep.max_deviation > 0.0);
}
