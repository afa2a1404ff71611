#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "llcartan/charts.hpp"
#include "llcartan/lie.hpp"

namespace llcartan::lorentz {

/// Chart of a Lorentzian manifold of dimension m+2, signature (m+1,1), with
/// a timelike orientation field.
struct LorentzChart {
  int dim = 4;  // m + 2
  charts::Box domain;
  charts::MetricField G;
  std::function<VectorXd(const VectorXd&)> t_or;
  /// Step for differentiating Christoffel symbols inside the curvature
  /// tensor. Kept larger than the metric fd_step so nested differences do
  /// not drown in round-off.
  double curvature_step = 1e-4;

  int m() const { return dim - 2; }
};

double metric(const LorentzChart& chart, const VectorXd& x, const VectorXd& u,
              const VectorXd& v);

/// Christoffel symbols; gamma[k](i,j) is Gamma^k_{ij}.
std::vector<MatrixXd> christoffels(const LorentzChart& chart, const VectorXd& x);

/// Covariant derivative of a vector field along the constant direction w.
VectorXd covariant_derivative(const LorentzChart& chart, const VectorXd& x,
                              const VectorXd& w,
                              const std::function<VectorXd(const VectorXd&)>& field,
                              double fd_step = 1e-5);

/// Curvature R(X,Y)W on constant coordinate-component vectors, convention
/// R(X,Y)W = nabla_X nabla_Y W - nabla_Y nabla_X W - nabla_{[X,Y]} W.
VectorXd riemann(const LorentzChart& chart, const VectorXd& x, const VectorXd& X,
                 const VectorXd& Y, const VectorXd& W);

double ricci(const LorentzChart& chart, const VectorXd& x, const VectorXd& X,
             const VectorXd& Y);

/// Null frame (l+, w_1..w_m, l-): the w_i orthonormal spacelike, both l
/// lightlike, g(l+, l-) = 1, l+ on the future side of the orientation.
struct NullFrame {
  VectorXd point;
  VectorXd l_plus;
  MatrixXd w;  // dim x m, columns w_1..w_m
  VectorXd l_minus;

  MatrixXd columns() const;  // dim x (m+2), frame as a matrix
};

/// Largest violation of the NullFrame metric relations.
double frame_residual(const LorentzChart& chart, const NullFrame& frame);

/// Solves g(eta, w_i) = 0, g(eta, l+) = 1 and removes the residual
/// lightlike defect along l+; eta is unique.
NullFrame complete_null_frame(const LorentzChart& chart, const VectorXd& x,
                              const VectorXd& l_plus, const MatrixXd& w_cols);

using FrameSection = std::function<NullFrame(const VectorXd&)>;

/// Levi-Civita connection form in a null frame section, evaluated on the
/// tangent w plus a vertical algebra element. Entries are
///   a = g(nabla_w l+, l-), X_i = g(nabla_w l+, E_i),
///   zrow_i = g(nabla_w E_i, l-), A_ij = g(E_i, nabla_w E_j).
lie::Algebra connection_form(const LorentzChart& chart,
                             const FrameSection& section, const VectorXd& x,
                             const VectorXd& w, const lie::Algebra& vertical,
                             double fd_step = 1e-5);

/// Eigenvalue signs of G at x: (negatives, positives).
std::pair<int, int> signature(const LorentzChart& chart, const VectorXd& x,
                              double tol = 1e-10);

}  // namespace llcartan::lorentz
