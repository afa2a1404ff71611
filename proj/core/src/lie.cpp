#include "llcartan/lie.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace llcartan::lie {

MatrixXd Algebra::matrix() const {
  const int n = m + 2;
  MatrixXd y = MatrixXd::Zero(n, n);
  y(0, 0) = a;
  y(n - 1, n - 1) = -a;
  y.block(1, 0, m, 1) = X;
  y.block(0, 1, 1, m) = zrow.transpose();
  y.block(1, 1, m, m) = A;
  y.block(1, n - 1, m, 1) = -zrow;
  y.block(n - 1, 1, 1, m) = -X.transpose();
  return y;
}

Algebra Algebra::from_matrix(const MatrixXd& y, double tol) {
  const int n = static_cast<int>(y.rows());
  if (y.cols() != n || n < 4)
    throw std::invalid_argument("Algebra::from_matrix: bad shape");
  Algebra out(n - 2);
  out.a = y(0, 0);
  out.X = y.block(1, 0, out.m, 1);
  out.zrow = y.block(0, 1, 1, out.m).transpose();
  out.A = y.block(1, 1, out.m, out.m);
  out.A = 0.5 * (out.A - out.A.transpose()).eval();
  const double res = (out.matrix() - y).norm();
  if (res > tol * (1.0 + y.norm()))
    throw std::invalid_argument("Algebra::from_matrix: not in the algebra");
  return out;
}

double Algebra::norm() const {
  return std::sqrt(a * a + X.squaredNorm() + A.squaredNorm() +
                   zrow.squaredNorm());
}

Algebra Algebra::minus_one_part() const {
  Algebra out(m);
  out.X = X;
  return out;
}

Algebra Algebra::zero_part() const {
  Algebra out(m);
  out.a = a;
  out.A = A;
  return out;
}

Algebra Algebra::one_part() const {
  Algebra out(m);
  out.zrow = zrow;
  return out;
}

Algebra Algebra::grading_element(int m) {
  Algebra e(m);
  e.a = 1.0;
  return e;
}

Algebra Algebra::minus_one_generator(int m, int i) {
  Algebra e(m);
  e.X[i] = 1.0;
  return e;
}

std::vector<Algebra> Algebra::h_basis(int m) {
  std::vector<Algebra> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Algebra y(m);
      y.A(i, j) = 1.0;
      y.A(j, i) = -1.0;
      out.push_back(y);
    }
  for (int i = 0; i < m; ++i) {
    Algebra y(m);
    y.zrow[i] = 1.0;
    out.push_back(y);
  }
  return out;
}

std::vector<Algebra> Algebra::g_basis(int m) {
  std::vector<Algebra> out;
  out.push_back(grading_element(m));
  for (int i = 0; i < m; ++i) out.push_back(minus_one_generator(m, i));
  for (int i = 0; i < m; ++i) {
    Algebra y(m);
    y.zrow[i] = 1.0;
    out.push_back(y);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Algebra y(m);
      y.A(i, j) = 1.0;
      y.A(j, i) = -1.0;
      out.push_back(y);
    }
  return out;
}

VectorXd Algebra::vectorize() const {
  VectorXd v(g_dim(m));
  int k = 0;
  v[k++] = a;
  for (int i = 0; i < m; ++i) v[k++] = X[i];
  for (int i = 0; i < m; ++i) v[k++] = zrow[i];
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) v[k++] = A(i, j);
  return v;
}

Algebra Algebra::from_vector(int m, const VectorXd& coeffs) {
  if (coeffs.size() != g_dim(m))
    throw std::invalid_argument("Algebra::from_vector: bad length");
  Algebra y(m);
  int k = 0;
  y.a = coeffs[k++];
  for (int i = 0; i < m; ++i) y.X[i] = coeffs[k++];
  for (int i = 0; i < m; ++i) y.zrow[i] = coeffs[k++];
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      y.A(i, j) = coeffs[k];
      y.A(j, i) = -coeffs[k++];
    }
  return y;
}

Algebra bracket(const Algebra& y1, const Algebra& y2) {
  if (y1.m != y2.m) throw std::invalid_argument("bracket: dimension mismatch");
  Algebra out(y1.m);
  out.a = y1.zrow.dot(y2.X) - y2.zrow.dot(y1.X);
  out.X = y2.a * y1.X + y1.A * y2.X - y1.a * y2.X - y2.A * y1.X;
  out.zrow = y1.a * y2.zrow + y2.A.transpose() * y1.zrow - y2.a * y1.zrow -
             y1.A.transpose() * y2.zrow;
  out.A = y1.X * y2.zrow.transpose() - y2.X * y1.zrow.transpose() +
          y1.A * y2.A - y2.A * y1.A +
          y1.zrow * y2.X.transpose() - y2.zrow * y1.X.transpose();
  return out;
}

Algebra operator+(const Algebra& y1, const Algebra& y2) {
  Algebra out(y1.m);
  out.a = y1.a + y2.a;
  out.X = y1.X + y2.X;
  out.A = y1.A + y2.A;
  out.zrow = y1.zrow + y2.zrow;
  return out;
}

Algebra operator-(const Algebra& y1, const Algebra& y2) {
  return y1 + (-1.0) * y2;
}

Algebra operator*(double t, const Algebra& y) {
  Algebra out(y.m);
  out.a = t * y.a;
  out.X = t * y.X;
  out.A = t * y.A;
  out.zrow = t * y.zrow;
  return out;
}

Group::Group(MatrixXd sigma, int mm, double tol) : mat(std::move(sigma)), m(mm) {
  const int n = m + 2;
  if (mat.rows() != n || mat.cols() != n)
    throw std::invalid_argument("Group: bad matrix shape");
  const MatrixXd s = mink::s_matrix(m);
  if ((mat.transpose() * s * mat - s).norm() > tol * (1.0 + mat.squaredNorm()))
    throw std::invalid_argument("Group: matrix does not preserve the form");
  // PO(m+1,1): pick the representative whose first column is future pointing.
  if (first_column_height(mat) < 0.0) mat = -mat;
}

Group Group::identity(int m) { return Group(MatrixXd::Identity(m + 2, m + 2), m); }

double Group::first_column_height(const MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows());
  return (sigma(0, 0) - sigma(n - 1, 0)) / std::sqrt(2.0);
}

Group operator*(const Group& s1, const Group& s2) {
  if (s1.m != s2.m) throw std::invalid_argument("Group product: dim mismatch");
  return Group(s1.mat * s2.mat, s1.m);
}

Group inverse(const Group& s) {
  const MatrixXd smat = mink::s_matrix(s.m);
  return Group(smat * s.mat.transpose() * smat, s.m);
}

HElement::HElement(VectorXd ww, MatrixXd gg) : w(std::move(ww)), g(std::move(gg)) {
  const int mm = static_cast<int>(w.size());
  if (g.rows() != mm || g.cols() != mm)
    throw std::invalid_argument("HElement: shape mismatch");
  if ((g.transpose() * g - MatrixXd::Identity(mm, mm)).norm() > 1e-8 * mm)
    throw std::invalid_argument("HElement: g not orthogonal");
}

HElement HElement::identity(int m) {
  return HElement(VectorXd::Zero(m), MatrixXd::Identity(m, m));
}

Group HElement::materialize() const {
  const int mm = m();
  const int n = mm + 2;
  MatrixXd sigma = MatrixXd::Identity(n, n);
  sigma.block(0, 1, 1, mm) = -(g.transpose() * w).transpose();
  sigma(0, n - 1) = -0.5 * w.squaredNorm();
  sigma.block(1, 1, mm, mm) = g;
  sigma.block(1, n - 1, mm, 1) = w;
  return Group(sigma, mm);
}

HElement operator*(const HElement& s1, const HElement& s2) {
  return HElement(s1.w + s1.g * s2.w, s1.g * s2.g);
}

double quotient_metric(const QuotVec& u, const QuotVec& v) {
  return u.X.dot(v.X);
}

QuotVec quotient_project(const Algebra& y) { return QuotVec(y.a, y.X); }

QuotVec ad_quotient(const HElement& sigma, const QuotVec& v) {
  const VectorXd gx = sigma.g * v.X;
  return QuotVec(v.a - sigma.w.dot(gx), gx);
}

Algebra ad_full(const Group& sigma, const Algebra& y) {
  const MatrixXd s = mink::s_matrix(sigma.m);
  const MatrixXd inv = s * sigma.mat.transpose() * s;
  return Algebra::from_matrix(sigma.mat * y.matrix() * inv, 1e-8);
}

Group exp(const Algebra& y) { return Group(y.matrix().exp(), y.m); }

Algebra maurer_cartan(const Group& sigma, const MatrixXd& xi,
                      double tangency_tol) {
  const MatrixXd s = mink::s_matrix(sigma.m);
  return Algebra::from_matrix(s * sigma.mat.transpose() * s * xi, tangency_tol);
}

mink::ConePoint cone_action(const Group& sigma, const mink::ConePoint& v) {
  mink::Convention can{sigma.m, mink::BasisKind::Canonical};
  const mink::Vector in_s =
      mink::basis_change(mink::Vector(v.v, can), mink::BasisKind::SBasis);
  const mink::Vector out_s(sigma.mat * in_s.coords,
                           {sigma.m, mink::BasisKind::SBasis});
  return mink::ConePoint(
      mink::basis_change(out_s, mink::BasisKind::Canonical).coords);
}

SphereConformalMap sphere_conformal_from_group(const Group& sigma) {
  SphereConformalMap out;
  out.phi_map = [sigma](const VectorXd& x) {
    return mink::project_to_sphere(cone_action(sigma, mink::cone_embed(x, 1.0)));
  };
  out.log_factor = [sigma](const VectorXd& x) {
    return -std::log(cone_action(sigma, mink::cone_embed(x, 1.0)).v[0]);
  };
  return out;
}

std::pair<VectorXd, double> model_isometry(const SphereConformalMap& map,
                                           const VectorXd& x, double s) {
  return {map.phi_map(x), s * std::exp(-map.log_factor(x))};
}

InjectivityReport injectivity_witness(int m, int trials, std::uint64_t seed) {
  Rng rng(seed);
  InjectivityReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const HElement h = random_h_element(m, rng);
    const double dist = h.w.norm() + (h.g - MatrixXd::Identity(m, m)).norm();
    if (dist < 1e-6) continue;  // too close to the identity to witness
    double moved = 0.0;
    for (int i = 0; i <= m; ++i) {
      QuotVec v(i == 0 ? 1.0 : 0.0, VectorXd::Zero(m));
      if (i > 0) v.X[i - 1] = 1.0;
      const QuotVec av = ad_quotient(h, v);
      moved = std::max(moved, std::abs(av.a - v.a) + (av.X - v.X).norm());
    }
    rep.max_deviation = std::max(rep.max_deviation, moved);
    if (moved < 1e-9) ++rep.violations;
  }
  return rep;
}

HElement random_h_element(int m, Rng& rng) {
  return HElement(rng.gaussian_vec(m), rng.orthogonal(m));
}

Algebra random_algebra(int m, Rng& rng, double scale) {
  Algebra y(m);
  y.a = scale * rng.gaussian();
  y.X = scale * rng.gaussian_vec(m);
  y.zrow = scale * rng.gaussian_vec(m);
  MatrixXd raw(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) raw(i, j) = scale * rng.gaussian();
  y.A = 0.5 * (raw - raw.transpose());
  return y;
}

Group random_group(int m, Rng& rng, double scale) {
  return exp(random_algebra(m, rng, scale));
}

}  // namespace llcartan::lie
