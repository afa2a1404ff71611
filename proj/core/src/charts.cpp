#include "llcartan/charts.hpp"

#include <cmath>
#include <stdexcept>

namespace llcartan::charts {

MatrixXd MetricField::d(int i, const VectorXd& x) const {
  if (i >= 0 && i < static_cast<int>(partials.size()) && partials[i])
    return partials[i](x);
  VectorXd xp = x, xm = x;
  xp[i] += fd_step;
  xm[i] -= fd_step;
  return (eval(xp) - eval(xm)) / (2.0 * fd_step);
}

MatrixXd MetricField::d2(int i, int j, const VectorXd& x) const {
  auto di = [&](double t) {
    VectorXd y = x;
    y[j] = t;
    return d(i, y);
  };
  // one Richardson level on the outer difference
  const double h = fd_step;
  MatrixXd d1 = (di(x[j] + h) - di(x[j] - h)) / (2.0 * h);
  MatrixXd d2 = (di(x[j] + h / 2.0) - di(x[j] - h / 2.0)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

bool Box::contains(const VectorXd& x, double slack) const {
  if (x.size() != lo.size()) return false;
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
  return true;
}

VectorXd Box::sample(Rng& rng) const {
  VectorXd x(dim());
  for (int i = 0; i < dim(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
  return x;
}

MatrixXd LightlikeChart::full_metric(const VectorXd& x) const {
  MatrixXd h = MatrixXd::Zero(m + 1, m + 1);
  h.block(1, 1, m, m) = H(x);
  return h;
}

RadicalReport radical_check(const LightlikeChart& chart, const VectorXd& x,
                            double tol) {
  if (!chart.domain.contains(x, 1e-12))
    throw std::invalid_argument("radical_check: point outside domain");
  const MatrixXd h = chart.full_metric(x);
  Eigen::JacobiSVD<MatrixXd> svd(h, Eigen::ComputeFullV);
  const VectorXd sv = svd.singularValues();
  RadicalReport rep;
  rep.smallest_sv = sv[chart.m];
  rep.second_smallest_sv = sv[chart.m - 1];
  rep.kernel_alignment = std::abs(svd.matrixV()(0, chart.m));
  const double scale = 1.0 + sv[0];
  rep.ok = rep.smallest_sv <= tol * scale &&
           rep.second_smallest_sv > tol * scale &&
           rep.kernel_alignment > 1.0 - tol;
  return rep;
}

MatrixXd a_z(const LightlikeChart& chart, const VectorXd& x) {
  const MatrixXd h = chart.H(x);
  Eigen::LDLT<MatrixXd> solver(h);
  if (solver.info() != Eigen::Success || !solver.isPositive())
    throw std::invalid_argument("a_z: singular or indefinite H");
  return 0.5 * solver.solve(chart.ds_H(x));
}

GenericReport generic_check(const LightlikeChart& chart, int samples,
                            std::uint64_t seed, double threshold) {
  Rng rng(seed);
  GenericReport rep;
  rep.threshold = threshold;
  rep.min_abs_det = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const VectorXd x = chart.domain.sample(rng);
    rep.min_abs_det = std::min(rep.min_abs_det,
                               std::abs(chart.ds_H(x).determinant()));
  }
  rep.generic = rep.min_abs_det >= threshold;
  return rep;
}

double rescaled_metric(const LightlikeChart& chart, const VectorXd& x,
                       const VectorXd& u, const VectorXd& v) {
  const MatrixXd a = a_z(chart, x);
  Eigen::PartialPivLU<MatrixXd> lu(a);
  if (std::abs(lu.determinant()) < 1e-12)
    throw std::invalid_argument("rescaled_metric: non-generic point");
  const VectorXd au = lu.solve(u.tail(chart.m));
  const VectorXd av = lu.solve(v.tail(chart.m));
  return au.dot(chart.H(x) * av);
}

double forward_rescaled_metric(const LightlikeChart& chart, const VectorXd& x,
                               const VectorXd& u, const VectorXd& v) {
  const MatrixXd a = a_z(chart, x);
  return (a * u.tail(chart.m)).dot(chart.H(x) * (a * v.tail(chart.m)));
}

double chart_metric(const LightlikeChart& chart, const VectorXd& x,
                    const VectorXd& u, const VectorXd& v) {
  return u.tail(chart.m).dot(chart.H(x) * v.tail(chart.m));
}

VectorXd flow_action(const LightlikeChart& chart, const VectorXd& x, double s) {
  if (s <= 0.0) throw std::invalid_argument("flow_action: s must be positive");
  VectorXd y = x;
  y[0] += std::log(s);
  if (!chart.domain.contains(y, 1e-12))
    throw std::invalid_argument("flow_action: leaves the domain");
  return y;
}

}  // namespace llcartan::charts
