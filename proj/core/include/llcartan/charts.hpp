#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "llcartan/numeric.hpp"

namespace llcartan::charts {

/// Symmetric-matrix field over chart coordinates. Analytic coordinate partials
/// are optional; the fallback is a central finite difference at fd_step.
struct MetricField {
  std::function<MatrixXd(const VectorXd&)> eval;
  std::vector<std::function<MatrixXd(const VectorXd&)>> partials;  // per coord
  double fd_step = 1e-5;

  MatrixXd operator()(const VectorXd& x) const { return eval(x); }
  MatrixXd d(int i, const VectorXd& x) const;
  MatrixXd d2(int i, int j, const VectorXd& x) const;
};

struct Box {
  VectorXd lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const VectorXd& x, double slack = 0.0) const;
  VectorXd sample(Rng& rng) const;
};

/// Lightlike manifold in normal-form coordinates x = (s, r_1, ..., r_m):
/// the radical field is Z = d/ds and h = sum H_ij(s,r) dr_i dr_j.
struct LightlikeChart {
  int m = 2;
  Box domain;     // dimension m+1, coordinate 0 is s
  MetricField H;  // m x m positive definite

  /// Full (m+1)x(m+1) component matrix; the s row and column vanish.
  MatrixXd full_metric(const VectorXd& x) const;
  MatrixXd ds_H(const VectorXd& x) const { return H.d(0, x); }
};

struct RadicalReport {
  bool ok = false;
  double smallest_sv = 0.0;
  double second_smallest_sv = 0.0;
  /// |s-component| of the unit kernel vector; 1 when the kernel is exactly Z.
  double kernel_alignment = 0.0;
};

/// Checks that the radical at x is exactly the line of d/ds.
RadicalReport radical_check(const LightlikeChart& chart, const VectorXd& x,
                            double tol = 1e-8);

/// Matrix of the self-adjoint radical Weingarten operator on the screen
/// quotient in the chart coframe: (1/2) H^{-1} dH/ds.
MatrixXd a_z(const LightlikeChart& chart, const VectorXd& x);

struct GenericReport {
  bool generic = false;
  double min_abs_det = 0.0;
  double threshold = 0.0;
};

/// Genericity: det(dH/ds) bounded away from zero over sampled points.
GenericReport generic_check(const LightlikeChart& chart, int samples,
                            std::uint64_t seed, double threshold = 1e-8);

/// Rescaled lightlike metric h_{A^{-1}}(u, v) = hbar(A^{-1}[u], A^{-1}[v]),
/// with A the radical Weingarten matrix; u, v are full chart tangents.
double rescaled_metric(const LightlikeChart& chart, const VectorXd& x,
                       const VectorXd& u, const VectorXd& v);

/// Metric applied after pushing classes forward by A: h(A[u], A[v]).
double forward_rescaled_metric(const LightlikeChart& chart, const VectorXd& x,
                               const VectorXd& u, const VectorXd& v);

double chart_metric(const LightlikeChart& chart, const VectorXd& x,
                    const VectorXd& u, const VectorXd& v);

/// Multiplicative flow action of the radical field: y * s shifts the first
/// coordinate by log s, so (y*s)*t = y*(st).
VectorXd flow_action(const LightlikeChart& chart, const VectorXd& x, double s);

}  // namespace llcartan::charts
