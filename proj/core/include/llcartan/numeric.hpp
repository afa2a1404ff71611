#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <type_traits>

namespace llcartan {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Central difference of a scalar- or vector-valued function of one real
/// variable. One Richardson level is available for slowly converging cases.
// Results are materialized into the value type of f; returning the raw
// Eigen expression would keep references to destroyed temporaries.
template <typename F>
std::decay_t<std::invoke_result_t<F&, double>> central_diff(F&& f, double t,
                                                            double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

template <typename F>
std::decay_t<std::invoke_result_t<F&, double>> central_diff_richardson(
    F&& f, double t, double h) {
  auto d1 = central_diff(f, t, h);
  auto d2 = central_diff(f, t, h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

template <typename F>
std::decay_t<std::invoke_result_t<F&, double>> second_diff(F&& f, double t,
                                                           double h) {
  return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

/// Deterministic random source. Every randomized routine in the library takes
/// an explicit seed; there is no shared global generator.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(gen_);
  }
  double gaussian() {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(gen_);
  }
  VectorXd uniform_vec(int n, double a, double b) {
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(a, b);
    return v;
  }
  VectorXd gaussian_vec(int n) {
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }
  /// Orthogonal matrix from QR of a Gaussian matrix. Alternates the sign of
  /// the determinant so both components of O(m) get sampled.
  MatrixXd orthogonal(int m) {
    MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = gaussian();
    Eigen::HouseholderQR<MatrixXd> qr(a);
    MatrixXd q = qr.householderQ();
    MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < m; ++i)
      if (r(i, i) < 0) q.col(i) *= -1.0;
    if (flip_ = !flip_; flip_ && m > 0) q.col(0) *= -1.0;
    return q;
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  bool flip_ = false;
};

}  // namespace llcartan
