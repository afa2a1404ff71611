#include "llcartan/ambient.hpp"

#include <cmath>
#include <stdexcept>

namespace llcartan::ambient {

SigmaFunc sigma_linear(double c) {
  return {[c](double rho) { return 1.0 + c * rho; },
          [c](double) { return c; }, [](double) { return 0.0; }};
}

SigmaFunc sigma_quadratic() {
  return {[](double rho) { return 1.0 + rho * rho; },
          [](double rho) { return 2.0 * rho; }, [](double) { return 2.0; }};
}

VectorXd AmbientChart::family_coords(const VectorXd& p) const {
  const int m = family.m;
  VectorXd f(m + 1);
  f[0] = p[m + 1];
  f.tail(m) = p.segment(1, m);
  return f;
}

lorentz::LorentzChart AmbientChart::chart() const {
  const int m = family.m;
  const int n = m + 2;
  lorentz::LorentzChart out;
  out.dim = n;
  out.domain.lo.resize(n);
  out.domain.hi.resize(n);
  out.domain.lo[0] = -epsilon;
  out.domain.hi[0] = epsilon;
  out.domain.lo.segment(1, m) = family.domain.lo.tail(m);
  out.domain.hi.segment(1, m) = family.domain.hi.tail(m);
  out.domain.lo[n - 1] = family.domain.lo[0];
  out.domain.hi[n - 1] = family.domain.hi[0];

  const AmbientChart self = *this;
  out.G.eval = [self, m, n](const VectorXd& p) {
    MatrixXd g = MatrixXd::Zero(n, n);
    const double s = p[n - 1];
    const double sig = self.sigma.f(p[0]);
    g(0, n - 1) = g(n - 1, 0) = s;
    g(n - 1, n - 1) = 2.0 * p[0];
    g.block(1, 1, m, m) = sig * sig * self.family.gs(self.family_coords(p));
    return g;
  };
  out.G.partials.resize(n);
  out.G.partials[0] = [self, m, n](const VectorXd& p) {
    MatrixXd g = MatrixXd::Zero(n, n);
    const double sig = self.sigma.f(p[0]);
    g(n - 1, n - 1) = 2.0;
    g.block(1, 1, m, m) = 2.0 * sig * self.sigma.d1(p[0]) *
                          self.family.gs(self.family_coords(p));
    return g;
  };
  for (int k = 1; k <= m; ++k)
    out.G.partials[k] = [self, m, n, k](const VectorXd& p) {
      MatrixXd g = MatrixXd::Zero(n, n);
      const double sig = self.sigma.f(p[0]);
      g.block(1, 1, m, m) =
          sig * sig * self.family.gs.d(k, self.family_coords(p));
      return g;
    };
  out.G.partials[n - 1] = [self, m, n](const VectorXd& p) {
    MatrixXd g = MatrixXd::Zero(n, n);
    g(0, n - 1) = g(n - 1, 0) = 1.0;
    const double sig = self.sigma.f(p[0]);
    g.block(1, 1, m, m) =
        sig * sig * self.family.gs.d(0, self.family_coords(p));
    return g;
  };
  out.t_or = [n](const VectorXd& p) {
    const double s = p[n - 1], rho = p[0];
    VectorXd t = VectorXd::Zero(n);
    t[0] = -(1.0 + rho / (s * s)) / std::sqrt(2.0);
    t[n - 1] = 1.0 / (s * std::sqrt(2.0));
    return t;  // -T
  };
  return out;
}

AmbientChart build_ambient(MetricFamily family, SigmaFunc sigma,
                           double epsilon) {
  if (std::abs(sigma.f(0.0) - 1.0) > 1e-12)
    throw std::invalid_argument("build_ambient: sigma(0) must be 1");
  AmbientChart out;
  out.family = std::move(family);
  out.sigma = std::move(sigma);
  out.epsilon = epsilon;
  return out;
}

AmbientChart build_ambient_c(MetricFamily family, double c, double epsilon) {
  if (std::abs(c) * epsilon >= 1.0)
    throw std::invalid_argument("build_ambient_c: 1 + c rho vanishes on band");
  return build_ambient(std::move(family), sigma_linear(c), epsilon);
}

std::pair<VectorXd, VectorXd> frame_fields(const AmbientChart& chart,
                                           const VectorXd& p) {
  const int n = chart.dim();
  const double s = p[n - 1], rho = p[0];
  const double r = 1.0 / std::sqrt(2.0);
  VectorXd t = VectorXd::Zero(n), e = VectorXd::Zero(n);
  t[0] = r * (1.0 + rho / (s * s));
  t[n - 1] = -r / s;
  e[0] = r * (1.0 - rho / (s * s));
  e[n - 1] = r / s;
  return {t, e};
}

cartan::Immersion embed_rho_zero(const AmbientChart& chart) {
  const int m = chart.family.m;
  cartan::Immersion imm;
  imm.ambient = chart.chart();
  imm.chart.m = m;
  imm.chart.domain.lo.resize(m + 1);
  imm.chart.domain.hi.resize(m + 1);
  imm.chart.domain.lo[0] = std::log(chart.family.domain.lo[0]);
  imm.chart.domain.hi[0] = std::log(chart.family.domain.hi[0]);
  imm.chart.domain.lo.tail(m) = chart.family.domain.lo.tail(m);
  imm.chart.domain.hi.tail(m) = chart.family.domain.hi.tail(m);
  const auto gs = chart.family.gs;
  auto famc = [m](const VectorXd& y) {
    VectorXd f(m + 1);
    f[0] = std::exp(y[0]);
    f.tail(m) = y.tail(m);
    return f;
  };
  imm.chart.H.eval = [gs, famc](const VectorXd& y) { return gs(famc(y)); };
  imm.chart.H.partials.resize(m + 1);
  imm.chart.H.partials[0] = [gs, famc](const VectorXd& y) {
    return (std::exp(y[0]) * gs.d(0, famc(y))).eval();
  };
  for (int k = 1; k <= m; ++k)
    imm.chart.H.partials[k] = [gs, famc, k](const VectorXd& y) {
      return gs.d(k, famc(y));
    };
  imm.psi = [m](const VectorXd& y) {
    VectorXd p = VectorXd::Zero(m + 2);
    p.segment(1, m) = y.tail(m);
    p[m + 1] = std::exp(y[0]);
    return p;
  };
  imm.dpsi = [m](const VectorXd& y) {
    MatrixXd d = MatrixXd::Zero(m + 2, m + 1);
    d(m + 1, 0) = std::exp(y[0]);
    for (int k = 0; k < m; ++k) d(1 + k, 1 + k) = 1.0;
    return d;
  };
  return imm;
}

MatrixXd fiber_shape_operator(const AmbientChart& chart, const VectorXd& p) {
  const VectorXd f = chart.family_coords(p);
  return 0.5 * chart.family.gs(f).ldlt().solve(chart.family.gs.d(0, f));
}

namespace {

// Levi-Civita symbols of the fixed-s fiber metric g_s over the x coordinates
std::vector<MatrixXd> fiber_christoffels(const AmbientChart& chart,
                                         const VectorXd& p) {
  const int m = chart.family.m;
  const double s = p[m + 1];
  lorentz::LorentzChart mini;
  mini.dim = m;
  const auto gs = chart.family.gs;
  mini.G.eval = [gs, s, m](const VectorXd& x) {
    VectorXd f(m + 1);
    f[0] = s;
    f.tail(m) = x;
    return gs(f);
  };
  mini.G.partials.resize(m);
  for (int k = 0; k < m; ++k)
    mini.G.partials[k] = [gs, s, m, k](const VectorXd& x) {
      VectorXd f(m + 1);
      f[0] = s;
      f.tail(m) = x;
      return gs.d(k + 1, f);
    };
  return lorentz::christoffels(mini, p.segment(1, m));
}

VectorXd spatial_embed(int m, const VectorXd& v) {
  VectorXd out = VectorXd::Zero(m + 2);
  out.segment(1, m) = v;
  return out;
}

}  // namespace

VectorXd lc_closed_form(const AmbientChart& chart, const VectorXd& p, LcCase c,
                        const VectorXd& v, const VectorXd& w) {
  const int m = chart.family.m;
  const int n = m + 2;
  const double s = p[n - 1], rho = p[0];
  const double sig = chart.sigma.f(rho), dsig = chart.sigma.d1(rho);
  VectorXd out = VectorXd::Zero(n);
  switch (c) {
    case LcCase::RhoRho:
    case LcCase::SS:
      return out;
    case LcCase::SRho:
      out[0] = 1.0 / s;
      return out;
    case LcCase::VRho:
      return spatial_embed(m, (dsig / sig) * v);
    case LcCase::VW: {
      const auto gamma = fiber_christoffels(chart, p);
      VectorXd tan(m);
      for (int k = 0; k < m; ++k) tan[k] = v.dot(gamma[k] * w);
      out = spatial_embed(m, tan);
      const VectorXd f = chart.family_coords(p);
      const MatrixXd gsv = chart.family.gs(f);
      const MatrixXd mop = fiber_shape_operator(chart, p);
      const double gvw = sig * sig * v.dot(gsv * w);
      const double gmvw = sig * sig * (mop * v).dot(gsv * w);
      const double coef = dsig / (s * sig);
      out[n - 1] += -coef * gvw;
      out[0] += coef * gvw * (2.0 * rho / s) - gmvw / s;
      return out;
    }
  }
  throw std::logic_error("lc_closed_form: unknown case");
}

VectorXd rs_closed_form(const AmbientChart& chart, const VectorXd& p, RsCase c,
                        const VectorXd& v) {
  const int m = chart.family.m;
  const int n = m + 2;
  const double s = p[n - 1], rho = p[0];
  const double sig = chart.sigma.f(rho), dsig = chart.sigma.d1(rho),
               d2sig = chart.sigma.d2(rho);
  VectorXd out = VectorXd::Zero(n);
  switch (c) {
    case RsCase::SRhoRho:
      return out;
    case RsCase::VRhoRho:
      return spatial_embed(m, (-d2sig / sig) * v);
    case RsCase::RhoSS:
      // Gamma_ss = 0 and nabla_s rho = (1/s) rho, so the two terms of the
      // curvature cancel identically, for every family and every sigma.
      return out;
    case RsCase::VSS: {
      const VectorXd f = chart.family_coords(p);
      const MatrixXd gsv = chart.family.gs(f);
      const MatrixXd mop = fiber_shape_operator(chart, p);
      // dM/ds = -2 M^2 + (1/2) g_s^{-1} d2(g_s)/ds2
      const MatrixXd mprime =
          -2.0 * mop * mop + 0.5 * gsv.ldlt().solve(chart.family.gs.d2(0, 0, f));
      return spatial_embed(m, -(mprime + mop * mop) * v);
    }
    case RsCase::VRhoS: {
      const MatrixXd mop = fiber_shape_operator(chart, p);
      return spatial_embed(m,
                           (dsig / (s * sig)) * v - (dsig / sig) * (mop * v));
    }
  }
  throw std::logic_error("rs_closed_form: unknown case");
}

double ric_rho_rho_closed_form(const AmbientChart& chart, const VectorXd& p) {
  return -chart.family.m * chart.sigma.d2(p[0]) / chart.sigma.f(p[0]);
}

AmbientPipelineReport ambient_pipeline(const MetricFamily& family, double c,
                                   int samples, std::uint64_t seed) {
  const AmbientChart amb = build_ambient_c(family, c);
  const cartan::Immersion imm = embed_rho_zero(amb);
  const int m = family.m;
  AmbientPipelineReport rep;
  rep.samples = samples;
  rep.min_rank_gap = std::numeric_limits<double>::infinity();
  rep.generic = charts::generic_check(imm.chart, samples, seed).generic;
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const cartan::Frame b = cartan::frame_action(
        cartan::standard_frame(imm.chart, y), lie::random_h_element(m, rng));
    const auto rank = cartan::cartan_rank_test(imm, b);
    rep.min_rank_gap = std::min(rep.min_rank_gap, rank.relative_gap);
    const auto exp = cartan::expansion(imm, y);
    rep.max_expansion_deviation =
        std::max(rep.max_expansion_deviation, std::abs(exp.lambda - 1.0));
    if (!rank.invertible) {
      ++rep.rank_failures;
      continue;
    }
    const VectorXd zc = cartan::extract_z_omega(imm, b);
    rep.max_z_residual =
        std::max(rep.max_z_residual, (zc - cartan::z_vector(m)).norm());
    // screen matrix of the null Weingarten map in the coordinate basis
    MatrixXd nmat(m, m);
    for (int j = 0; j < m; ++j) {
      VectorXd ej = VectorXd::Zero(m + 1);
      ej[1 + j] = 1.0;
      const VectorXd nz = cartan::nabla_z(imm, y, ej);
      nmat.col(j) = nz.segment(1, m);  // spatial ambient = spatial chart
    }
    Eigen::FullPivLU<MatrixXd> lu(nmat);
    if (!lu.isInvertible()) {
      ++rep.rank_failures;
      continue;
    }
    for (int t = 0; t < 3; ++t) {
      const VectorXd u = rng.gaussian_vec(m), w = rng.gaussian_vec(m);
      VectorXd uu = VectorXd::Zero(m + 1), ww = VectorXd::Zero(m + 1);
      uu.tail(m) = lu.solve(u);
      ww.tail(m) = lu.solve(w);
      const double lhs = cartan::extract_h_omega(imm, b, uu, ww);
      VectorXd cu = VectorXd::Zero(m + 1), cw = VectorXd::Zero(m + 1);
      cu.tail(m) = u;
      cw.tail(m) = w;
      const double rhs = charts::chart_metric(imm.chart, y, cu, cw);
      rep.max_h_residual = std::max(rep.max_h_residual,
                                    std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
  }
  return rep;
}

charts::MetricField sphere_stereographic(int m) {
  charts::MetricField field;
  field.eval = [m](const VectorXd& r) {
    const double q = 1.0 + r.squaredNorm();
    return ((4.0 / (q * q)) * MatrixXd::Identity(m, m)).eval();
  };
  field.partials.resize(m);
  for (int k = 0; k < m; ++k)
    field.partials[k] = [m, k](const VectorXd& r) {
      const double q = 1.0 + r.squaredNorm();
      return ((-16.0 * r[k] / (q * q * q)) * MatrixXd::Identity(m, m)).eval();
    };
  return field;
}

VectorXd stereographic_point(const VectorXd& r) {
  const int m = static_cast<int>(r.size());
  const double q = 1.0 + r.squaredNorm();
  VectorXd x(m + 1);
  x.head(m) = 2.0 * r / q;
  x[m] = (1.0 - r.squaredNorm()) / q;
  return x;
}

MetricFamily cone_family(int m) {
  MetricFamily fam;
  fam.m = m;
  const charts::MetricField sph = sphere_stereographic(m);
  fam.gs.eval = [sph, m](const VectorXd& f) {
    const double s = f[0];
    return (s * s * sph(f.tail(m))).eval();
  };
  fam.gs.partials.resize(m + 1);
  fam.gs.partials[0] = [sph, m](const VectorXd& f) {
    return (2.0 * f[0] * sph(f.tail(m))).eval();
  };
  for (int k = 1; k <= m; ++k)
    fam.gs.partials[k] = [sph, m, k](const VectorXd& f) {
      return (f[0] * f[0] * sph.d(k - 1, f.tail(m))).eval();
    };
  fam.domain.lo.resize(m + 1);
  fam.domain.hi.resize(m + 1);
  fam.domain.lo[0] = 0.5;
  fam.domain.hi[0] = 2.0;
  fam.domain.lo.tail(m).setConstant(-1.0);
  fam.domain.hi.tail(m).setConstant(1.0);
  return fam;
}

MetricFamily warped_family(int m, std::function<double(double)> eps,
                           std::function<double(double)> deps) {
  MetricFamily fam;
  fam.m = m;
  fam.gs.eval = [eps, m](const VectorXd& f) {
    const double e = eps(f[0]);
    return (e * e * MatrixXd::Identity(m, m)).eval();
  };
  fam.gs.partials.resize(m + 1);
  fam.gs.partials[0] = [eps, deps, m](const VectorXd& f) {
    return (2.0 * eps(f[0]) * deps(f[0]) * MatrixXd::Identity(m, m)).eval();
  };
  for (int k = 1; k <= m; ++k)
    fam.gs.partials[k] = [m](const VectorXd&) {
      return MatrixXd::Zero(m, m).eval();
    };
  fam.domain.lo.resize(m + 1);
  fam.domain.hi.resize(m + 1);
  fam.domain.lo[0] = 0.5;
  fam.domain.hi[0] = 2.0;
  fam.domain.lo.tail(m).setConstant(-1.0);
  fam.domain.hi.tail(m).setConstant(1.0);
  return fam;
}

FgCone fg_cone_metric(int m, double epsilon) {
  FgCone out;
  out.ambient = build_ambient(cone_family(m), sigma_linear(0.5), epsilon);
  out.alpha = [m](const VectorXd& p) {
    const double rho = p[0], s = p[m + 1];
    const VectorXd x = stereographic_point(p.segment(1, m));
    VectorXd a(m + 2);
    a[0] = (1.0 - rho / 2.0) * s;
    a.tail(m + 1) = (1.0 + rho / 2.0) * s * x;
    return a;
  };
  return out;
}

WarpedReport warped_criterion(const MetricFamily& family, int samples,
                              std::uint64_t seed) {
  Rng rng(seed);
  WarpedReport rep;
  rep.min_abs_deps = std::numeric_limits<double>::infinity();
  const int m = family.m;
  for (int k = 0; k < samples; ++k) {
    const VectorXd f = family.domain.sample(rng);
    VectorXd f1 = f;
    f1[0] = 1.0;
    const MatrixXd g1 = family.gs(f1);
    auto factor = [&](double s) {
      VectorXd fs = f;
      fs[0] = s;
      return std::sqrt(family.gs(fs).trace() / g1.trace());
    };
    const double eps = factor(f[0]);
    VectorXd fs = f;
    const MatrixXd gsv = family.gs(fs);
    rep.max_deviation =
        std::max(rep.max_deviation, (gsv - eps * eps * g1).norm() / gsv.norm());
    rep.eps_samples.emplace_back(f[0], eps);
    const double h = 1e-5;
    rep.min_abs_deps = std::min(
        rep.min_abs_deps, std::abs((factor(f[0] + h) - factor(f[0] - h)) / (2 * h)));
  }
  rep.warped = rep.max_deviation < 1e-8;
  return rep;
}

}  // namespace llcartan::ambient
