#include "llcartan/lorentz.hpp"

#include <cmath>
#include <stdexcept>

namespace llcartan::lorentz {

double metric(const LorentzChart& chart, const VectorXd& x, const VectorXd& u,
              const VectorXd& v) {
  return u.dot(chart.G(x) * v);
}

std::vector<MatrixXd> christoffels(const LorentzChart& chart, const VectorXd& x) {
  const int n = chart.dim;
  const MatrixXd g = chart.G(x);
  Eigen::PartialPivLU<MatrixXd> lu(g);
  if (std::abs(lu.determinant()) < 1e-14)
    throw std::invalid_argument("christoffels: singular metric");
  std::vector<MatrixXd> dg(n);
  for (int i = 0; i < n; ++i) dg[i] = chart.G.d(i, x);
  std::vector<MatrixXd> gamma(n, MatrixXd::Zero(n, n));
  MatrixXd lower(n, n);  // lower(l, j) = Gamma_{l,ij} for fixed i below
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      VectorXd rhs(n);
      for (int l = 0; l < n; ++l)
        rhs[l] = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
      const VectorXd gk = lu.solve(rhs);
      for (int k = 0; k < n; ++k) {
        gamma[k](i, j) = gk[k];
        gamma[k](j, i) = gk[k];
      }
    }
  return gamma;
}

VectorXd covariant_derivative(const LorentzChart& chart, const VectorXd& x,
                              const VectorXd& w,
                              const std::function<VectorXd(const VectorXd&)>& field,
                              double fd_step) {
  const int n = chart.dim;
  const auto gamma = christoffels(chart, x);
  const VectorXd v = field(x);
  VectorXd dwv = (field(x + fd_step * w) - field(x - fd_step * w)) /
                 (2.0 * fd_step);
  for (int k = 0; k < n; ++k) dwv[k] += w.dot(gamma[k] * v);
  return dwv;
}

VectorXd riemann(const LorentzChart& chart, const VectorXd& x, const VectorXd& X,
                 const VectorXd& Y, const VectorXd& W) {
  const int n = chart.dim;
  const double h = chart.curvature_step;
  // directional derivatives of Gamma along X and Y
  auto dgamma = [&](const VectorXd& dir) {
    std::vector<MatrixXd> out(n);
    const auto gp = christoffels(chart, x + h * dir);
    const auto gm = christoffels(chart, x - h * dir);
    for (int k = 0; k < n; ++k) out[k] = (gp[k] - gm[k]) / (2.0 * h);
    return out;
  };
  const auto dx_gamma = dgamma(X);
  const auto dy_gamma = dgamma(Y);
  const auto gamma = christoffels(chart, x);
  // Gamma(dir, v) as a vector
  auto contract = [&](const std::vector<MatrixXd>& g, const VectorXd& u,
                      const VectorXd& v) {
    VectorXd out(n);
    for (int k = 0; k < n; ++k) out[k] = u.dot(g[k] * v);
    return out;
  };
  const VectorXd gyw = contract(gamma, Y, W);
  const VectorXd gxw = contract(gamma, X, W);
  VectorXd r = contract(dx_gamma, Y, W) - contract(dy_gamma, X, W) +
               contract(gamma, X, gyw) - contract(gamma, Y, gxw);
  return r;
}

double ricci(const LorentzChart& chart, const VectorXd& x, const VectorXd& X,
             const VectorXd& Y) {
  const int n = chart.dim;
  double tr = 0.0;
  for (int i = 0; i < n; ++i) {
    VectorXd ei = VectorXd::Zero(n);
    ei[i] = 1.0;
    tr += riemann(chart, x, ei, X, Y)[i];
  }
  return tr;
}

MatrixXd NullFrame::columns() const {
  const int n = static_cast<int>(l_plus.size());
  const int m = static_cast<int>(w.cols());
  MatrixXd c(n, m + 2);
  c.col(0) = l_plus;
  c.block(0, 1, n, m) = w;
  c.col(m + 1) = l_minus;
  return c;
}

double frame_residual(const LorentzChart& chart, const NullFrame& frame) {
  const MatrixXd c = frame.columns();
  const MatrixXd gram = c.transpose() * chart.G(frame.point) * c;
  const MatrixXd s = mink::s_matrix(chart.m());
  double res = (gram - s).cwiseAbs().maxCoeff();
  if (metric(chart, frame.point, frame.l_plus, chart.t_or(frame.point)) >= 0.0)
    res = std::max(res, 1.0);  // wrong causal side
  return res;
}

NullFrame complete_null_frame(const LorentzChart& chart, const VectorXd& x,
                              const VectorXd& l_plus, const MatrixXd& w_cols) {
  const int n = chart.dim;
  const int m = static_cast<int>(w_cols.cols());
  if (m != chart.m())
    throw std::invalid_argument("complete_null_frame: wrong frame size");
  const MatrixXd g = chart.G(x);
  MatrixXd cond(m + 1, n);
  VectorXd rhs = VectorXd::Zero(m + 1);
  for (int i = 0; i < m; ++i) cond.row(i) = (g * w_cols.col(i)).transpose();
  cond.row(m) = (g * l_plus).transpose();
  rhs[m] = 1.0;
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> dec(cond);
  if (dec.rank() < m + 1)
    throw std::invalid_argument("complete_null_frame: degenerate input frame");
  VectorXd eta = dec.solve(rhs);
  // remove the lightlike defect along l_plus; g(l+, eta) = 1 is unchanged
  eta -= 0.5 * eta.dot(g * eta) * l_plus;
  NullFrame frame;
  frame.point = x;
  frame.l_plus = l_plus;
  frame.w = w_cols;
  frame.l_minus = eta;
  return frame;
}

lie::Algebra connection_form(const LorentzChart& chart,
                             const FrameSection& section, const VectorXd& x,
                             const VectorXd& w, const lie::Algebra& vertical,
                             double fd_step) {
  const int m = chart.m();
  lie::Algebra out(m);
  if (w.norm() > 0.0) {
    auto lp = [&](const VectorXd& y) { return section(y).l_plus; };
    auto lm = [&](const VectorXd& y) { return section(y).l_minus; };
    const NullFrame frame = section(x);
    const MatrixXd g = chart.G(x);
    const VectorXd dlp = covariant_derivative(chart, x, w, lp, fd_step);
    out.a = dlp.dot(g * frame.l_minus);
    out.X = frame.w.transpose() * g * dlp;
    for (int j = 0; j < m; ++j) {
      auto ej = [&, j](const VectorXd& y) { return section(y).w.col(j); };
      const VectorXd dej = covariant_derivative(chart, x, w, ej, fd_step);
      out.zrow[j] = dej.dot(g * frame.l_minus);
      out.A.col(j) = frame.w.transpose() * g * dej;
    }
    out.A = 0.5 * (out.A - out.A.transpose()).eval();
  }
  return out + vertical;
}

std::pair<int, int> signature(const LorentzChart& chart, const VectorXd& x,
                              double tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(chart.G(x));
  int neg = 0, pos = 0;
  for (int i = 0; i < chart.dim; ++i) {
    if (es.eigenvalues()[i] < -tol) ++neg;
    if (es.eigenvalues()[i] > tol) ++pos;
  }
  return {neg, pos};
}

}  // namespace llcartan::lorentz
