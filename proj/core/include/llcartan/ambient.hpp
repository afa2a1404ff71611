#pragma once

#include <Eigen/Dense>
#include <functional>

#include "llcartan/cartan.hpp"
#include "llcartan/charts.hpp"
#include "llcartan/lorentz.hpp"

namespace llcartan::ambient {

/// One-parameter family of Riemannian metrics g_s on the light-source
/// manifold, evaluated over coordinates (s, x_1..x_m) with coordinate 0 = s.
struct MetricFamily {
  int m = 2;
  charts::MetricField gs;
  charts::Box domain;  // (s, x) box, dimension m+1
};

struct SigmaFunc {
  std::function<double(double)> f, d1, d2;
};

SigmaFunc sigma_linear(double c);  // 1 + c rho
SigmaFunc sigma_quadratic();       // 1 + rho^2

/// Thickened ambient manifold over coordinates (rho, x_1..x_m, s) carrying
/// g = ds (x) d(rho s) + d(rho s) (x) ds + sigma^2(rho) g_s.
struct AmbientChart {
  MetricFamily family;
  SigmaFunc sigma;
  double epsilon = 0.5;

  int dim() const { return family.m + 2; }
  /// Family coordinates (s, x) of an ambient point.
  VectorXd family_coords(const VectorXd& p) const;
  lorentz::LorentzChart chart() const;
};

AmbientChart build_ambient(MetricFamily family, SigmaFunc sigma,
                           double epsilon = 0.5);
AmbientChart build_ambient_c(MetricFamily family, double c,
                             double epsilon = 0.5);

/// Orthonormal horizontal pair (T timelike, E spacelike).
std::pair<VectorXd, VectorXd> frame_fields(const AmbientChart& chart,
                                           const VectorXd& p);

/// The rho = 0 hypersurface as a lightlike immersion. The chart coordinate
/// along the radical is t = log s, so the radical field s d/ds becomes d/dt.
cartan::Immersion embed_rho_zero(const AmbientChart& chart);

enum class LcCase {
  RhoRho,  // nabla_rho rho = 0
  SRho,    // nabla_s rho = (1/s) rho
  VRho,    // nabla_V rho = (sigma'/sigma) V
  SS,      // nabla_s s = 0
  VW,      // full nabla_V W: lifted fiber connection plus the normal part
};

/// Closed-form Levi-Civita values of the ambient family; V, W are spatial
/// (x-coordinate) components, ignored by the cases that do not use them.
VectorXd lc_closed_form(const AmbientChart& chart, const VectorXd& p, LcCase c,
                        const VectorXd& v = VectorXd(),
                        const VectorXd& w = VectorXd());

enum class RsCase {
  SRhoRho,  // R(s, rho) rho = 0
  VRhoRho,  // R(V, rho) rho = -(sigma''/sigma) V
  RhoSS,    // R(rho, s) s = 0
  VSS,      // R(V, s) s = -(M' + M^2) V
  VRhoS,    // R(V, rho) s = (sigma'/(s sigma)) V - (sigma'/sigma) M V
};

VectorXd rs_closed_form(const AmbientChart& chart, const VectorXd& p, RsCase c,
                        const VectorXd& v = VectorXd());

/// Closed-form Ric(rho, rho) = -m sigma''/sigma.
double ric_rho_rho_closed_form(const AmbientChart& chart, const VectorXd& p);

/// The endomorphism M = (1/2) g_s^{-1} d(g_s)/ds of the fiber directions.
MatrixXd fiber_shape_operator(const AmbientChart& chart, const VectorXd& p);

struct AmbientPipelineReport {
  int samples = 0;
  bool generic = true;
  int rank_failures = 0;
  double min_rank_gap = 0.0;
  /// max relative deviation of the rescaled induced metric from h
  double max_h_residual = 0.0;
  /// max deviation of the induced radical vector from Z
  double max_z_residual = 0.0;
  double max_expansion_deviation = 0.0;  // from lambda = 1
};

/// Full pipeline of the ambient construction: embed at rho = 0, test the
/// pulled-back connection, recover (h, Z).
AmbientPipelineReport ambient_pipeline(const MetricFamily& family, double c,
                                   int samples, std::uint64_t seed);

/// Round sphere in a stereographic chart, with analytic partials.
charts::MetricField sphere_stereographic(int m);
/// Stereographic chart point to the unit sphere in R^{m+1}.
VectorXd stereographic_point(const VectorXd& r);

/// The cone family g_s = s^2 g_sphere.
MetricFamily cone_family(int m);
/// Warped family g_s = eps(s)^2 delta on a flat box.
MetricFamily warped_family(int m, std::function<double(double)> eps,
                           std::function<double(double)> deps);

struct FgCone {
  AmbientChart ambient;
  /// Isometric immersion into flat Lorentz-Minkowski space, canonical
  /// coordinates; pulls the flat metric back to the ambient one.
  std::function<VectorXd(const VectorXd&)> alpha;
};

/// The cone ambient metric with sigma = 1 + rho/2; flat, realized inside
/// Lorentz-Minkowski space by alpha.
FgCone fg_cone_metric(int m, double epsilon = 0.5);

struct WarpedReport {
  bool warped = false;
  double max_deviation = 0.0;
  /// eps(s) at the sampled s values against g_1 := g at s = 1
  std::vector<std::pair<double, double>> eps_samples;
  double min_abs_deps = 0.0;  // |eps'| lower bound over samples
};

/// Tests whether g_s = eps(s)^2 g_1 for an s-only factor.
WarpedReport warped_criterion(const MetricFamily& family, int samples,
                              std::uint64_t seed);

}  // namespace llcartan::ambient
