#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "llcartan/charts.hpp"

using namespace llcartan;
using namespace llcartan::charts;

namespace {

// polynomial positive definite family over (s, r1, r2)
LightlikeChart sample_chart() {
  LightlikeChart chart;
  chart.m = 2;
  chart.domain.lo = VectorXd::Constant(3, -0.8);
  chart.domain.hi = VectorXd::Constant(3, 0.8);
  chart.H.eval = [](const VectorXd& x) {
    MatrixXd h(2, 2);
    const double s = x[0], r1 = x[1], r2 = x[2];
    h(0, 0) = 2.0 + s + 0.3 * r1 * r1;
    h(1, 1) = 1.5 + 0.9 * s + 0.2 * r2;
    h(0, 1) = h(1, 0) = 0.1 * s * r1 * r2;
    return h;
  };
  return chart;
}

}  // namespace

TEST_CASE("metric field derivatives: finite differences vs analytic") {
  MetricField f;
  f.eval = [](const VectorXd& x) {
    MatrixXd h(2, 2);
    h(0, 0) = std::exp(x[0]) + x[1] * x[1];
    h(1, 1) = 2.0 + std::sin(x[0] * x[1]);
    h(0, 1) = h(1, 0) = x[0] * x[1];
    return h;
  };
  VectorXd x(2);
  x << 0.3, -0.4;
  const MatrixXd d0 = f.d(0, x);
  MatrixXd d0_exact(2, 2);
  d0_exact(0, 0) = std::exp(0.3);
  d0_exact(1, 1) = -0.4 * std::cos(0.3 * -0.4);
  d0_exact(0, 1) = d0_exact(1, 0) = -0.4;
  CHECK((d0 - d0_exact).cwiseAbs().maxCoeff() < 1e-8);
  const MatrixXd d00 = f.d2(0, 0, x);
  CHECK(d00(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-5));
  const MatrixXd d01 = f.d2(0, 1, x);
  CHECK(d01(0, 1) == doctest::Approx(1.0).epsilon(1e-5));
  // analytic partial wins over the finite difference when registered
  MetricField g = f;
  g.partials.resize(2);
  g.partials[0] = [](const VectorXd&) { return MatrixXd::Zero(2, 2).eval(); };
  CHECK(g.d(0, x).norm() == 0.0);
  CHECK(g.d(1, x).norm() > 0.0);  // missing entries fall back to FD
}

TEST_CASE("radical of the full chart metric is exactly the s line") {
  const LightlikeChart chart = sample_chart();
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    const VectorXd x = chart.domain.sample(rng);
    const auto rep = radical_check(chart, x);
    CHECK(rep.ok);
    CHECK(rep.smallest_sv < 1e-12);
    CHECK(rep.second_smallest_sv > 1e-3);
    CHECK(rep.kernel_alignment == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("radical Weingarten matrix against a flow-difference oracle") {
  const LightlikeChart chart = sample_chart();
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    const VectorXd x = chart.domain.sample(rng);
    // oracle: half Lie derivative of H along d/ds, contracted with H^{-1}
    const MatrixXd oracle =
        0.5 * chart.H(x).ldlt().solve(central_diff_richardson(
                  [&](double t) {
                    VectorXd xp = x;
                    xp[0] += t;
                    return chart.H(xp);
                  },
                  0.0, 1e-4));
    CHECK((a_z(chart, x) - oracle).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("half Lie derivative along the radical flow equals H a_z") {
  const LightlikeChart chart = sample_chart();
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const VectorXd x = chart.domain.sample(rng);
    VectorXd u = rng.gaussian_vec(3), v = rng.gaussian_vec(3);
    const double lie_h = 0.5 * central_diff(
                                   [&](double t) {
                                     return chart_metric(
                                         chart, flow_action(chart, x, std::exp(t)),
                                         u, v);
                                   },
                                   0.0, 1e-5);
    const MatrixXd b = chart.H(x) * a_z(chart, x);
    const double direct = u.tail(2).dot(b * v.tail(2));
    CHECK(lie_h == doctest::Approx(direct).epsilon(1e-7));
  }
}

TEST_CASE("genericity verdicts") {
  const LightlikeChart generic = sample_chart();
  CHECK(generic_check(generic, 40, 9).generic);
  LightlikeChart degenerate = sample_chart();
  degenerate.H.eval = [](const VectorXd&) {
    return MatrixXd::Identity(2, 2).eval();
  };
  const auto rep = generic_check(degenerate, 40, 9);
  CHECK(!rep.generic);
  CHECK(rep.min_abs_det < rep.threshold);
}

TEST_CASE("rescaled metrics invert each other through the Weingarten matrix") {
  const LightlikeChart chart = sample_chart();
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    const VectorXd x = chart.domain.sample(rng);
    const VectorXd u = rng.gaussian_vec(3), v = rng.gaussian_vec(3);
    // h_{A^{-1}} evaluated on forward-pushed classes gives back h
    const MatrixXd a = a_z(chart, x);
    VectorXd au = u, av = v;
    au.tail(2) = a * u.tail(2);
    av.tail(2) = a * v.tail(2);
    CHECK(rescaled_metric(chart, x, au, av) ==
          doctest::Approx(chart_metric(chart, x, u, v)).epsilon(1e-10));
    CHECK(forward_rescaled_metric(chart, x, u, v) ==
          doctest::Approx(chart_metric(chart, x, au, av)).epsilon(1e-10));
    // classes mod the radical: the s-component never matters
    VectorXd us = u;
    us[0] += rng.gaussian();
    CHECK(chart_metric(chart, x, us, v) ==
          doctest::Approx(chart_metric(chart, x, u, v)).epsilon(1e-12));
  }
}

TEST_CASE("radical flow action is multiplicative") {
  const LightlikeChart chart = sample_chart();
  VectorXd x(3);
  x << 0.1, 0.2, -0.3;
  const VectorXd a = flow_action(chart, flow_action(chart, x, 1.2), 1.1);
  const VectorXd b = flow_action(chart, x, 1.2 * 1.1);
  CHECK((a - b).norm() < 1e-14);
  CHECK_THROWS(flow_action(chart, x, 100.0));  // leaves the domain
}
