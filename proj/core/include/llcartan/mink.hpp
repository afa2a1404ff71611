#pragma once

#include <Eigen/Dense>

#include "llcartan/numeric.hpp"

namespace llcartan::mink {

enum class BasisKind { Canonical, SBasis };

/// Basis bookkeeping for Lorentz-Minkowski space of dimension m+2 with
/// signature (m+1,1). The canonical basis carries diag(-1,1,...,1); the
/// S-basis (l, e_1, ..., e_m, eta) carries the Gram matrix
/// [[0,0,1],[0,I_m,0],[1,0,0]].
struct Convention {
  int m = 2;
  BasisKind kind = BasisKind::Canonical;

  int dim() const { return m + 2; }
  MatrixXd metric_matrix() const;
  bool operator==(const Convention&) const = default;
};

/// Gram matrix S of the null basis; satisfies S*S = I.
MatrixXd s_matrix(int m);

/// Canonical coordinates of the S-basis vectors, as columns:
/// l = (1,0,...,0,1)/sqrt(2), e_i = canonical spatial vectors,
/// eta = (-1,0,...,0,1)/sqrt(2). Only the Gram matrix is canonical; this
/// concrete embedding makes <l,eta> = 1 with l future pointing.
MatrixXd basis_matrix(int m);

struct Vector {
  VectorXd coords;
  Convention conv;

  Vector(VectorXd c, Convention cv);
  int m() const { return conv.m; }
};

double inner(const Vector& u, const Vector& v);

Vector basis_change(const Vector& v, BasisKind target);

/// Point of the future lightlike cone, canonical coordinates.
struct ConePoint {
  VectorXd v;  // size m+2, canonical

  explicit ConePoint(VectorXd coords);
  int m() const { return static_cast<int>(v.size()) - 2; }
};

/// Scale-aware lightlike membership test |<v,v>| <= tol*(1+|v|^2).
bool is_lightlike(const VectorXd& canonical, double tol = 1e-9);

VectorXd project_to_sphere(const ConePoint& p);

ConePoint cone_embed(const VectorXd& sphere_point, double s);

/// Degenerate induced metric h on the cone: equals the ambient product on
/// tangent vectors, with radical spanned by the position vector.
double cone_metric(const ConePoint& p, const VectorXd& w1, const VectorXd& w2,
                   double tangency_tol = 1e-7);

}  // namespace llcartan::mink
