#include "llcartan/mink.hpp"

#include <cmath>
#include <stdexcept>

namespace llcartan::mink {

MatrixXd s_matrix(int m) {
  const int n = m + 2;
  MatrixXd s = MatrixXd::Zero(n, n);
  s(0, n - 1) = 1.0;
  s(n - 1, 0) = 1.0;
  for (int i = 1; i <= m; ++i) s(i, i) = 1.0;
  return s;
}

MatrixXd basis_matrix(int m) {
  const int n = m + 2;
  const double r = 1.0 / std::sqrt(2.0);
  MatrixXd c = MatrixXd::Zero(n, n);
  c(0, 0) = r;
  c(n - 1, 0) = r;  // l
  for (int i = 1; i <= m; ++i) c(i, i) = 1.0;
  c(0, n - 1) = -r;
  c(n - 1, n - 1) = r;  // eta
  return c;
}

MatrixXd Convention::metric_matrix() const {
  if (kind == BasisKind::SBasis) return s_matrix(m);
  MatrixXd g = MatrixXd::Identity(dim(), dim());
  g(0, 0) = -1.0;
  return g;
}

Vector::Vector(VectorXd c, Convention cv) : coords(std::move(c)), conv(cv) {
  if (coords.size() != conv.dim())
    throw std::invalid_argument("mink::Vector: coordinate length mismatch");
}

double inner(const Vector& u, const Vector& v) {
  if (!(u.conv == v.conv))
    throw std::invalid_argument("mink::inner: convention mismatch");
  return u.coords.dot(u.conv.metric_matrix() * v.coords);
}

Vector basis_change(const Vector& v, BasisKind target) {
  if (v.conv.kind == target)
    throw std::invalid_argument("mink::basis_change: source equals target");
  const MatrixXd c = basis_matrix(v.conv.m);
  Convention out{v.conv.m, target};
  if (target == BasisKind::Canonical) return Vector(c * v.coords, out);
  // c^{-1} = S c^t g_can
  const int m = v.conv.m;
  MatrixXd gcan = MatrixXd::Identity(m + 2, m + 2);
  gcan(0, 0) = -1.0;
  return Vector(s_matrix(m) * c.transpose() * gcan * v.coords, out);
}

bool is_lightlike(const VectorXd& v, double tol) {
  double q = -v[0] * v[0] + v.tail(v.size() - 1).squaredNorm();
  return std::abs(q) <= tol * (1.0 + v.squaredNorm());
}

ConePoint::ConePoint(VectorXd coords) : v(std::move(coords)) {
  if (v.size() < 4) throw std::invalid_argument("ConePoint: need m >= 2");
  if (v[0] <= 0.0) throw std::invalid_argument("ConePoint: v0 must be positive");
  if (!is_lightlike(v)) throw std::invalid_argument("ConePoint: not lightlike");
}

VectorXd project_to_sphere(const ConePoint& p) {
  return p.v.tail(p.v.size() - 1) / p.v[0];
}

ConePoint cone_embed(const VectorXd& x, double s) {
  if (s <= 0.0) throw std::invalid_argument("cone_embed: s must be positive");
  if (std::abs(x.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("cone_embed: sphere point not unit");
  VectorXd v(x.size() + 1);
  v[0] = s;
  v.tail(x.size()) = s * x;
  return ConePoint(std::move(v));
}

double cone_metric(const ConePoint& p, const VectorXd& w1, const VectorXd& w2,
                   double tol) {
  Convention cv{p.m(), BasisKind::Canonical};
  Vector vp(p.v, cv), a(w1, cv), b(w2, cv);
  const double scale = 1.0 + p.v.norm();
  if (std::abs(inner(vp, a)) > tol * scale * (1.0 + w1.norm()) ||
      std::abs(inner(vp, b)) > tol * scale * (1.0 + w2.norm()))
    throw std::invalid_argument("cone_metric: vector not tangent to the cone");
  return inner(a, b);
}

}  // namespace llcartan::mink
