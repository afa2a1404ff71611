#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "llcartan/charts.hpp"
#include "llcartan/lie.hpp"
#include "llcartan/lorentz.hpp"

namespace llcartan::cartan {

/// Isometric immersion of a lightlike normal-form chart as a hypersurface of
/// a Lorentzian chart. psi maps chart coordinates (s, r) to ambient
/// coordinates; dpsi is its Jacobian (finite differences when absent).
struct Immersion {
  lorentz::LorentzChart ambient;
  charts::LightlikeChart chart;
  std::function<VectorXd(const VectorXd&)> psi;
  std::function<MatrixXd(const VectorXd&)> dpsi;
  double fd_step = 1e-5;

  MatrixXd differential(const VectorXd& y) const;
  /// Pushforward of a chart tangent vector.
  VectorXd push(const VectorXd& y, const VectorXd& v) const;
  /// Largest |psi*(g) - h| entry over the chart frame at y.
  double isometry_residual(const VectorXd& y) const;
};

/// Admissible frame (Z(y), e_1, ..., e_m) in chart components; the radical
/// vector Z = d/ds is implicit, e holds the spatial frame columns.
struct Frame {
  VectorXd y;  // chart point, size m+1
  MatrixXd e;  // (m+1) x m chart tangent columns

  int m() const { return static_cast<int>(e.cols()); }
};

/// Unit s-direction, the chart representative of Z.
VectorXd z_vector(int m);

/// h-orthonormality defect of the frame.
double admissibility_residual(const charts::LightlikeChart& chart,
                              const Frame& b);

/// Canonical admissible frame at y: spatial columns of H^{-1/2}.
Frame standard_frame(const charts::LightlikeChart& chart, const VectorXd& y);

/// Right action of H on admissible frames:
/// e_j -> sum_i g_ij (-w_i Z + e_i).
Frame frame_action(const Frame& b, const lie::HElement& sigma);

using NSection = std::function<Frame(const VectorXd&)>;

/// Smooth local frame section through b: Gram-Schmidt of the constant
/// columns of b against H at the evaluation point.
NSection gs_section(const charts::LightlikeChart& chart, const Frame& b);

/// Pushes an admissible frame to an ambient null frame, completing with the
/// unique transversal lightlike vector.
lorentz::NullFrame lift_frame(const Immersion& imm, const Frame& b);

/// Pull-back of the Levi-Civita connection form on the admissible-frame
/// bundle, evaluated through the given section on the chart tangent v plus
/// a vertical element.
lie::Algebra omega_eval(const Immersion& imm, const NSection& section,
                        const VectorXd& y, const VectorXd& v,
                        const lie::Algebra& vertical);

/// omega_eval through the default Gram-Schmidt section of b.
lie::Algebra omega_eval(const Immersion& imm, const Frame& b, const VectorXd& v,
                        const lie::Algebra& vertical);

struct ExpansionResult {
  double lambda = 0.0;
  /// Least-squares defect of nabla_Z Z against Z; large values flag an
  /// invalid lightlike immersion.
  double residual = 0.0;
};

/// Expansion function: nabla_Z Z = lambda Z along the hypersurface.
ExpansionResult expansion(const Immersion& imm, const VectorXd& y);

/// Ambient covariant derivative of the radical field along the chart
/// direction u at y (a vector tangent to the hypersurface).
VectorXd nabla_z(const Immersion& imm, const VectorXd& y, const VectorXd& u);

/// Null second fundamental form B_Z(u, v) = h(nabla_u Z, v).
double null_second_fundamental_form(const Immersion& imm, const VectorXd& y,
                                    const VectorXd& u, const VectorXd& v);

/// The connection form assembled on a basis of the frame-bundle tangent
/// space at b: m+1 section directions (Z, e_1..e_m) then the h basis.
struct OmegaMatrix {
  Frame b;
  std::vector<VectorXd> horizontal;  // chart tangents of the basis
  MatrixXd mat;                      // g_dim x g_dim, columns vectorized

  /// Chart tangent and vertical part solving omega = target.
  std::pair<VectorXd, lie::Algebra> invert(const lie::Algebra& target) const;
};

OmegaMatrix assemble_omega(const Immersion& imm, const Frame& b);

struct RankReport {
  bool invertible = false;
  double smallest_sv = 0.0;
  double largest_sv = 0.0;
  double relative_gap = 0.0;  // smallest / largest
};

/// Pointwise bijectivity of the candidate Cartan connection.
RankReport cartan_rank_test(const Immersion& imm, const Frame& b,
                            double threshold = 1e-8);

/// Lightlike metric of the induced Cartan geometry:
/// q of the quotient projections of omega on section directions.
double extract_h_omega(const Immersion& imm, const Frame& b, const VectorXd& u,
                       const VectorXd& v);

/// Radical vector of the induced geometry: Tp(omega^{-1}(E)); equals
/// Z / lambda on valid hypersurfaces.
VectorXd extract_z_omega(const Immersion& imm, const Frame& b);

/// Soldering value by both routes: frame coefficients of the projected
/// tangent, and the quotient projection of omega. Returns (frame route,
/// omega route).
std::pair<lie::QuotVec, lie::QuotVec> soldering_eval(const Immersion& imm,
                                                     const Frame& b,
                                                     const VectorXd& v,
                                                     const lie::Algebra& vertical);

/// Curvature function on quotient classes: conjugates the ambient Riemann
/// endomorphism by the lifted frame, with tangents recovered through omega.
lie::Algebra curvature_function(const Immersion& imm, const Frame& b,
                                const lie::QuotVec& x1, const lie::QuotVec& x2);

struct FlatnessReport {
  int samples = 0;
  double max_curvature = 0.0;    // model-flatness criterion
  double max_z_curvature = 0.0;  // scale-bundle criterion, radical slot only
  bool model_flat = false;
  bool scale_bundle_flat = false;
  /// Deviation of h^omega from lambda^2 h, evaluated when a criterion holds.
  double max_homega_deviation = 0.0;
};

FlatnessReport flatness_diagnostics(const Immersion& imm, int samples,
                                    std::uint64_t seed, double tol = 1e-6);

/// Diffeomorphism of the chart with differential and inverse supplied.
struct ChartDiffeo {
  std::function<VectorXd(const VectorXd&)> f;
  std::function<MatrixXd(const VectorXd&)> df;
  std::function<VectorXd(const VectorXd&)> finv;
};

struct HorizontalReport {
  int samples = 0;
  /// Max defect of f as an isometry preserving Z (precondition).
  double isometry_residual = 0.0;
  /// Max residual of the constant-field preservation identity over the
  /// sampled frames and the m+1 horizontal generators.
  double max_residual = 0.0;
};

HorizontalReport horizontal_preservation_check(const Immersion& imm,
                                               const ChartDiffeo& f,
                                               int samples, std::uint64_t seed);

struct KossowskiResult {
  double kbar = 0.0;
  double denominator = 0.0;
};

/// Curvature ratio det h(nabla_{v_i} Z, v_j) / det h(v_i, v_j) on a spatial
/// complement (columns of v).
KossowskiResult kossowski_curvature(const Immersion& imm, const VectorXd& y,
                                    const MatrixXd& v);

/// Explicit model connection of the flat null hyperplane on the trivialized
/// frame bundle R^{m+1} x H.
namespace flat_model {

/// The g-element [[r,0,0],[Y,0,0],[0,-Y^t,-r]] attached to a base velocity.
lie::Algebra base_matrix(int m, double r, const VectorXd& y_vel);

/// omega(x,[sigma])((r,Y), xi_X) = Ad[sigma^{-1}] base_matrix + X.
lie::Algebra omega(const lie::HElement& sigma, double r, const VectorXd& y_vel,
                   const lie::Algebra& vertical);

/// Solves omega = target for the base velocity and vertical part.
std::tuple<double, VectorXd, lie::Algebra> omega_inverse(
    const lie::HElement& sigma, const lie::Algebra& target);

/// Isometry f(x) = (x0 + c + <grad0, x_spatial>, A x_spatial + v) of the
/// flat chart; an automorphism of the model connection iff grad0 = 0.
struct AffineIso {
  double c = 0.0;
  VectorXd grad0;
  MatrixXd A;
  VectorXd v;
};

/// Residual of the constant-field preservation identity for the generators
/// E, E_1..E_m at (x, sigma).
double automorphism_residual(const AffineIso& f, const VectorXd& x,
                             const lie::HElement& sigma);

}  // namespace flat_model

}  // namespace llcartan::cartan
