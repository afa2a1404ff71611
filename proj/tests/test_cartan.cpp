#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "llcartan/ambient.hpp"
#include "llcartan/cartan.hpp"
#include "llcartan/scenarios.hpp"

using namespace llcartan;
using namespace llcartan::cartan;

namespace {

lie::Algebra ad_inv(const lie::HElement& sigma, const lie::Algebra& y) {
  return lie::ad_full(lie::inverse(sigma.materialize()), y);
}

// cone over the round sphere reparametrized so the radical field has
// expansion 2 instead of 1: psi(t, r) = e^{2t} (1, X(r))
Immersion double_speed_cone(int m) {
  Immersion imm;
  imm.ambient = scenarios::minkowski_chart(m);
  imm.chart.m = m;
  imm.chart.domain.lo = VectorXd::Constant(m + 1, -0.3);
  imm.chart.domain.hi = VectorXd::Constant(m + 1, 0.3);
  imm.chart.domain.lo[0] = -0.2;
  imm.chart.domain.hi[0] = 0.2;
  const charts::MetricField sph = ambient::sphere_stereographic(m);
  imm.chart.H.eval = [sph, m](const VectorXd& y) {
    return MatrixXd(std::exp(4.0 * y[0]) * sph(y.tail(m)));
  };
  imm.psi = [m](const VectorXd& y) {
    VectorXd p(m + 2);
    p[0] = std::exp(2.0 * y[0]);
    p.tail(m + 1) = p[0] * ambient::stereographic_point(y.tail(m));
    return p;
  };
  imm.dpsi = [m](const VectorXd& y) {
    const VectorXd r = y.tail(m);
    const double q = 1.0 + r.squaredNorm();
    const double e2t = std::exp(2.0 * y[0]);
    MatrixXd j = MatrixXd::Zero(m + 2, m + 1);
    VectorXd psi(m + 2);
    psi[0] = e2t;
    psi.tail(m + 1) = e2t * ambient::stereographic_point(r);
    j.col(0) = 2.0 * psi;
    for (int k = 0; k < m; ++k) {
      VectorXd dx(m + 1);
      dx.head(m) = (2.0 / q) * VectorXd::Unit(m, k) - (4.0 * r[k] / (q * q)) * r;
      dx[m] = -4.0 * r[k] / (q * q);
      j.block(1, 1 + k, m + 1, 1) = e2t * dx;
    }
    return j;
  };
  return imm;
}

VectorXd stereo_inverse(const VectorXd& x) {
  const int m = static_cast<int>(x.size()) - 1;
  return x.head(m) / (1.0 + x[m]);
}

}  // namespace

TEST_CASE("frame action is a right action and preserves admissibility") {
  const Immersion imm = scenarios::model_cone(2);
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const Frame b = standard_frame(imm.chart, y);
    CHECK(admissibility_residual(imm.chart, b) < 1e-12);
    const lie::HElement s1 = lie::random_h_element(2, rng);
    const lie::HElement s2 = lie::random_h_element(2, rng);
    const Frame two_steps = frame_action(frame_action(b, s1), s2);
    const Frame one_step = frame_action(b, s1 * s2);
    CHECK((two_steps.e - one_step.e).norm() < 1e-12);
    CHECK(admissibility_residual(imm.chart, two_steps) < 1e-10);
  }
}

TEST_CASE("frame lift lands on a valid ambient null frame") {
  const Immersion imm = scenarios::model_cone(3);
  Rng rng(5);
  for (int k = 0; k < 15; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    Frame b = standard_frame(imm.chart, y);
    if (k % 2) b = frame_action(b, lie::random_h_element(3, rng));
    const lorentz::NullFrame frame = lift_frame(imm, b);
    CHECK(lorentz::frame_residual(imm.ambient, frame) < 1e-8);
    // l+ is the pushforward of the radical field
    CHECK((frame.l_plus - imm.push(y, z_vector(3))).norm() < 1e-10);
  }
}

TEST_CASE("connection form reproduces vertical generators") {
  const Immersion imm = scenarios::model_cone(2);
  Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const Frame b = standard_frame(imm.chart, y);
    lie::Algebra vert = lie::random_algebra(2, rng);
    vert.a = 0.0;
    vert.X.setZero();  // project into the isotropy algebra
    const lie::Algebra val = omega_eval(imm, b, VectorXd::Zero(3), vert);
    CHECK((val - vert).norm() < 1e-10);
  }
}

TEST_CASE("connection form is equivariant under the structure group") {
  const Immersion imm = scenarios::model_cone(2);
  Rng rng(11);
  for (int k = 0; k < 8; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const Frame b = standard_frame(imm.chart, y);
    const NSection sec = gs_section(imm.chart, b);
    const lie::HElement sigma = lie::random_h_element(2, rng);
    const NSection moved = [sec, sigma](const VectorXd& yy) {
      return frame_action(sec(yy), sigma);
    };
    const VectorXd v = rng.gaussian_vec(3);
    lie::Algebra vert = lie::random_algebra(2, rng);
    vert.a = 0.0;
    vert.X.setZero();
    const lie::Algebra lhs = omega_eval(imm, moved, y, v, ad_inv(sigma, vert));
    const lie::Algebra rhs = ad_inv(sigma, omega_eval(imm, sec, y, v, vert));
    CHECK((lhs - rhs).norm() < 1e-6);
  }
}

TEST_CASE("quotient slots of the connection measure the radical derivative") {
  const Immersion imm = scenarios::model_cone(2);
  Rng rng(13);
  for (int k = 0; k < 10; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    Frame b = standard_frame(imm.chart, y);
    if (k % 2) b = frame_action(b, lie::random_h_element(2, rng));
    const VectorXd v = rng.gaussian_vec(3);
    const lie::QuotVec got =
        lie::quotient_project(omega_eval(imm, b, v, lie::Algebra(2)));
    // oracle: pair the ambient derivative of Z with the lifted frame
    const lorentz::NullFrame frame = lift_frame(imm, b);
    const VectorXd dz = nabla_z(imm, y, v);
    const double a_slot =
        lorentz::metric(imm.ambient, frame.point, dz, frame.l_minus);
    VectorXd x_slot(2);
    for (int i = 0; i < 2; ++i)
      x_slot[i] = lorentz::metric(imm.ambient, frame.point, dz, frame.w.col(i));
    CHECK(std::abs(got.a - a_slot) < 1e-7);
    CHECK((got.X - x_slot).norm() < 1e-7);
  }
}

TEST_CASE("two routes to the soldering form agree on the model cone") {
  const Immersion imm = scenarios::model_cone(3);
  Rng rng(17);
  for (int k = 0; k < 10; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const Frame b = standard_frame(imm.chart, y);
    const VectorXd v = rng.gaussian_vec(4);
    lie::Algebra vert = lie::random_algebra(3, rng);
    vert.a = 0.0;
    vert.X.setZero();
    const auto [frame_route, omega_route] = soldering_eval(imm, b, v, vert);
    CHECK(std::abs(frame_route.a - omega_route.a) < 1e-7);
    CHECK((frame_route.X - omega_route.X).norm() < 1e-7);
  }
}

TEST_CASE("radical direction maps to the grading element times the expansion") {
  Rng rng(19);
  const std::vector<std::pair<Immersion, double>> cases = {
      {scenarios::model_cone(2), 1.0}, {double_speed_cone(2), 2.0}};
  for (const auto& [imm, lambda] : cases) {
    for (int k = 0; k < 6; ++k) {
      const VectorXd y = imm.chart.domain.sample(rng);
      const Frame b = standard_frame(imm.chart, y);
      const auto exp_res = expansion(imm, y);
      CHECK(exp_res.lambda == doctest::Approx(lambda).epsilon(1e-8));
      CHECK(exp_res.residual < 1e-8);
      const lie::QuotVec q =
          lie::quotient_project(omega_eval(imm, b, z_vector(2), lie::Algebra(2)));
      CHECK(q.a == doctest::Approx(lambda).epsilon(1e-7));
      CHECK(q.X.norm() < 1e-7);
      // induced radical vector is Z / lambda
      VectorXd z_target = VectorXd::Zero(3);
      z_target[0] = 1.0 / lambda;
      CHECK((extract_z_omega(imm, b) - z_target).norm() < 1e-7);
    }
  }
}

TEST_CASE("induced lightlike metric: frame independence and cone identity") {
  const Immersion imm = scenarios::model_cone(2);
  Rng rng(23);
  for (int k = 0; k < 6; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const Frame b = standard_frame(imm.chart, y);
    const VectorXd u = rng.gaussian_vec(3), v = rng.gaussian_vec(3);
    const double base = extract_h_omega(imm, b, u, v);
    // the cone has h^omega = h
    CHECK(base == doctest::Approx(charts::chart_metric(imm.chart, y, u, v))
                      .epsilon(1e-7));
    for (int j = 0; j < 8; ++j) {
      const Frame moved = frame_action(b, lie::random_h_element(2, rng));
      CHECK(std::abs(extract_h_omega(imm, moved, u, v) - base) < 1e-7);
      CHECK((extract_z_omega(imm, moved) - extract_z_omega(imm, b)).norm() <
            1e-7);
    }
  }
}

TEST_CASE("null second fundamental form is symmetric and equals h on the cone") {
  const Immersion imm = scenarios::model_cone(3);
  Rng rng(29);
  for (int k = 0; k < 10; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const VectorXd u = rng.gaussian_vec(4), v = rng.gaussian_vec(4);
    const double buv = null_second_fundamental_form(imm, y, u, v);
    CHECK(buv ==
          doctest::Approx(null_second_fundamental_form(imm, y, v, u))
              .epsilon(1e-7));
    CHECK(buv == doctest::Approx(charts::chart_metric(imm.chart, y, u, v))
                     .epsilon(1e-7));
  }
}

TEST_CASE("assembled connection matrix inverts the evaluation") {
  const Immersion imm = scenarios::model_cone(2);
  Rng rng(31);
  for (int k = 0; k < 8; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const Frame b = standard_frame(imm.chart, y);
    const OmegaMatrix om = assemble_omega(imm, b);
    const lie::Algebra target = lie::random_algebra(2, rng);
    const auto [v, vert] = om.invert(target);
    const lie::Algebra back = omega_eval(imm, b, v, vert);
    CHECK((back - target).norm() < 1e-6);
    CHECK(cartan_rank_test(imm, b).invertible);
  }
}

TEST_CASE("curvature function: antisymmetry, horizontality, cone flatness") {
  const Immersion imm = scenarios::model_cone(2);
  Rng rng(37);
  const VectorXd y = imm.chart.domain.sample(rng);
  const Frame b = standard_frame(imm.chart, y);
  const lie::QuotVec x1(rng.gaussian(), rng.gaussian_vec(2));
  const lie::QuotVec x2(rng.gaussian(), rng.gaussian_vec(2));
  const lie::Algebra k12 = curvature_function(imm, b, x1, x2);
  const lie::Algebra k21 = curvature_function(imm, b, x2, x1);
  CHECK((k12 + k21).norm() < 1e-5);
  const lie::QuotVec zero(0.0, VectorXd::Zero(2));
  CHECK(curvature_function(imm, b, zero, x2).norm() < 1e-8);
  // the cone sits in flat space: both flatness criteria hold
  const FlatnessReport rep = flatness_diagnostics(imm, 5, 41);
  CHECK(rep.model_flat);
  CHECK(rep.scale_bundle_flat);
  CHECK(rep.max_curvature < 1e-6);
  CHECK(rep.max_homega_deviation < 1e-6);
}

TEST_CASE("constant fields are preserved by lifted model isometries") {
  const int m = 2;
  const Immersion imm = scenarios::model_cone(m);
  Rng rng(43);
  const lie::Group g = lie::random_group(m, rng, 0.25);
  const auto conf = lie::sphere_conformal_from_group(g);
  const auto conf_inv = lie::sphere_conformal_from_group(lie::inverse(g));
  auto chart_map = [m](const lie::SphereConformalMap& cm, const VectorXd& y) {
    const auto [x, s] =
        lie::model_isometry(cm, ambient::stereographic_point(y.tail(m)),
                            std::exp(y[0]));
    VectorXd out(m + 1);
    out[0] = std::log(s);
    out.tail(m) = stereo_inverse(x);
    return out;
  };
  ChartDiffeo f;
  f.f = [&, conf](const VectorXd& y) { return chart_map(conf, y); };
  f.finv = [&, conf_inv](const VectorXd& y) { return chart_map(conf_inv, y); };
  f.df = [&](const VectorXd& y) {
    MatrixXd j(m + 1, m + 1);
    for (int i = 0; i <= m; ++i)
      j.col(i) = central_diff_richardson(
          [&](double t) {
            VectorXd yp = y;
            yp[i] = t;
            return f.f(yp);
          },
          // a coarse step keeps the Jacobian smooth enough to be
          // differentiated again inside the connection evaluation
          y[i], 1e-3);
    return j;
  };
  const HorizontalReport rep = horizontal_preservation_check(imm, f, 6, 47);
  CHECK(rep.isometry_residual < 1e-6);
  CHECK(rep.max_residual < 1e-6);
}

TEST_CASE("curvature ratio of the radical shape operator") {
  Rng rng(53);
  const Immersion cone = scenarios::model_cone(2);
  const Immersion plane = scenarios::flat_null_hyperplane(2);
  for (int k = 0; k < 10; ++k) {
    MatrixXd v = MatrixXd::Zero(3, 2);
    v.block(1, 0, 2, 2) = MatrixXd::Random(2, 2);
    // the cone satisfies nabla Z = id, so the ratio is one
    const VectorXd y = cone.chart.domain.sample(rng);
    const KossowskiResult kc = kossowski_curvature(cone, y, v);
    CHECK(kc.kbar == doctest::Approx(1.0).epsilon(1e-6));
    // the flat hyperplane has parallel radical: ratio zero
    const VectorXd yp = plane.chart.domain.sample(rng);
    const KossowskiResult kp = kossowski_curvature(plane, yp, v);
    CHECK(std::abs(kp.kbar) < 1e-8);
  }
}

TEST_CASE("flat hyperplane breaks the rank condition everywhere") {
  const Immersion imm = scenarios::flat_null_hyperplane(3);
  Rng rng(59);
  for (int k = 0; k < 10; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const Frame b = standard_frame(imm.chart, y);
    const RankReport rep = cartan_rank_test(imm, b);
    CHECK(!rep.invertible);
    CHECK(rep.relative_gap < 1e-8);
    // the expansion vanishes identically
    CHECK(std::abs(expansion(imm, y).lambda) < 1e-9);
  }
}

TEST_CASE("explicit model connection of the flat hyperplane") {
  Rng rng(61);
  const int m = 3;
  for (int k = 0; k < 20; ++k) {
    const lie::HElement sigma = lie::random_h_element(m, rng);
    const double r = rng.gaussian();
    const VectorXd yv = rng.gaussian_vec(m);
    lie::Algebra vert = lie::random_algebra(m, rng);
    vert.a = 0.0;
    vert.X.setZero();
    const lie::Algebra val = flat_model::omega(sigma, r, yv, vert);
    const auto [r2, yv2, vert2] = flat_model::omega_inverse(sigma, val);
    CHECK(r2 == doctest::Approx(r).epsilon(1e-10));
    CHECK((yv2 - yv).norm() < 1e-10);
    CHECK((vert2 - vert).norm() < 1e-10);
  }
  // translations and rotations are automorphisms, shears are not
  flat_model::AffineIso good;
  good.c = 0.7;
  good.grad0 = VectorXd::Zero(m);
  good.A = Rng(67).orthogonal(m);
  good.v = rng.gaussian_vec(m);
  flat_model::AffineIso shear = good;
  shear.grad0 = VectorXd::Unit(m, 1) * 0.4;
  for (int k = 0; k < 10; ++k) {
    const VectorXd x = rng.gaussian_vec(m + 1);
    const lie::HElement sigma = lie::random_h_element(m, rng);
    CHECK(flat_model::automorphism_residual(good, x, sigma) < 1e-7);
    CHECK(flat_model::automorphism_residual(shear, x, sigma) > 1e-2);
  }
}

TEST_CASE("immersion pullback matches the chart metric") {
  const Immersion imm = double_speed_cone(2);
  Rng rng(71);
  for (int k = 0; k < 10; ++k) {
    CHECK(imm.isometry_residual(imm.chart.domain.sample(rng)) < 1e-8);
  }
}
