#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "llcartan/mink.hpp"
#include "llcartan/numeric.hpp"

namespace llcartan::lie {

/// Element of the graded Lie algebra of the Moebius group, stored by its
/// block data: a in R, X in R^m (the g_{-1} slot), A in o(m), and the g_1
/// row Z. Materializes to
///   [[a, Z, 0], [X, A, -Z^t], [0, -X^t, -a]]
/// in the S-basis.
struct Algebra {
  int m = 2;
  double a = 0.0;
  VectorXd X;
  MatrixXd A;
  VectorXd zrow;

  Algebra() = default;
  explicit Algebra(int mm)
      : m(mm), X(VectorXd::Zero(mm)), A(MatrixXd::Zero(mm, mm)),
        zrow(VectorXd::Zero(mm)) {}

  MatrixXd matrix() const;
  static Algebra from_matrix(const MatrixXd& y, double tol = 1e-10);

  double norm() const;

  Algebra minus_one_part() const;  // X only
  Algebra zero_part() const;       // a and A
  Algebra one_part() const;        // zrow only

  /// Grading element E: a = 1, rest zero.
  static Algebra grading_element(int m);
  /// E_i in g_{-1}, the i-th canonical generator (i in 0..m-1).
  static Algebra minus_one_generator(int m, int i);
  /// Basis of h = [g0,g0] + g1: rotations then g1 rows.
  static std::vector<Algebra> h_basis(int m);
  /// Fixed basis of the full algebra g; also defines the vectorization order
  /// used by vectorize().
  static std::vector<Algebra> g_basis(int m);
  static int g_dim(int m) { return (m + 1) * (m + 2) / 2; }
  VectorXd vectorize() const;
  static Algebra from_vector(int m, const VectorXd& coeffs);
};

Algebra bracket(const Algebra& y1, const Algebra& y2);

Algebra operator+(const Algebra& y1, const Algebra& y2);
Algebra operator-(const Algebra& y1, const Algebra& y2);
Algebra operator*(double t, const Algebra& y);

/// Matrix representative of PO(m+1,1) in the S-basis, normalized to the
/// O^+ component: the first column is in the future cone.
struct Group {
  MatrixXd mat;
  int m = 2;

  Group() = default;
  Group(MatrixXd sigma, int mm, double tol = 1e-8);
  static Group identity(int m);

  /// Canonical x0 coordinate of the first column; positive for O^+.
  static double first_column_height(const MatrixXd& sigma);
};

Group operator*(const Group& s1, const Group& s2);
Group inverse(const Group& s);

/// Element of H = R^m x| O(m), the rigid motions of E^m, together with its
/// matrix realization in G.
struct HElement {
  VectorXd w;
  MatrixXd g;

  HElement() = default;
  HElement(VectorXd ww, MatrixXd gg);
  static HElement identity(int m);
  int m() const { return static_cast<int>(w.size()); }
  Group materialize() const;
};

HElement operator*(const HElement& s1, const HElement& s2);

struct QuotVec {
  double a = 0.0;
  VectorXd X;

  QuotVec() = default;
  QuotVec(double aa, VectorXd xx) : a(aa), X(std::move(xx)) {}
  int m() const { return static_cast<int>(X.size()); }
};

/// Lightlike metric q on g/h: q((a,X),(b,Y)) = <X,Y>.
double quotient_metric(const QuotVec& u, const QuotVec& v);

/// Quotient projection g -> g/h under the identification (a, X).
QuotVec quotient_project(const Algebra& y);

/// Closed-form quotient adjoint action of H: (a,X) -> (a - <w, gX>, gX).
QuotVec ad_quotient(const HElement& sigma, const QuotVec& v);

/// Full adjoint action sigma Y sigma^{-1} with sigma^{-1} = S sigma^t S.
Algebra ad_full(const Group& sigma, const Algebra& y);

Group exp(const Algebra& y);

/// Maurer-Cartan form: S sigma^t S xi, for xi tangent at sigma.
Algebra maurer_cartan(const Group& sigma, const MatrixXd& xi,
                      double tangency_tol = 1e-8);

/// Action of G on the future cone (canonical coordinates):
/// v -> (sigma v)^+ .
mink::ConePoint cone_action(const Group& sigma, const mink::ConePoint& v);

/// Sphere conformal map with conformal factor: Phi and phi with
/// Phi^*(g_sphere) = e^{2 phi} g_sphere.
struct SphereConformalMap {
  std::function<VectorXd(const VectorXd&)> phi_map;   // S^m -> S^m
  std::function<double(const VectorXd&)> log_factor;  // phi(x)
};

/// The conformal transformation of S^m induced by sigma, with
/// e^{2 phi(x)} = 1/(sigma(1,x))^+_0)^2.
SphereConformalMap sphere_conformal_from_group(const Group& sigma);

/// Cone isometry induced by a sphere conformal map:
/// f(x,s) = (Phi(x), s e^{-phi(x)}).
std::pair<VectorXd, double> model_isometry(const SphereConformalMap& map,
                                           const VectorXd& x, double s);

struct InjectivityReport {
  int trials = 0;
  int violations = 0;  // would-be counterexamples to injectivity
  double max_deviation = 0.0;  // largest |ad(sigma)v - v| witnessed
};

/// Randomized witness that the quotient adjoint representation is faithful:
/// every sampled non-identity sigma moves some quotient vector.
InjectivityReport injectivity_witness(int m, int trials, std::uint64_t seed);

HElement random_h_element(int m, Rng& rng);
Algebra random_algebra(int m, Rng& rng, double scale = 1.0);
Group random_group(int m, Rng& rng, double scale = 0.7);

}  // namespace llcartan::lie
