#include "llcartan/cartan.hpp"

#include <cmath>
#include <stdexcept>

namespace llcartan::cartan {

MatrixXd Immersion::differential(const VectorXd& y) const {
  if (dpsi) return dpsi(y);
  const int n = static_cast<int>(y.size());
  MatrixXd d(ambient.dim, n);
  for (int i = 0; i < n; ++i) {
    VectorXd yp = y, ym = y;
    yp[i] += fd_step;
    ym[i] -= fd_step;
    d.col(i) = (psi(yp) - psi(ym)) / (2.0 * fd_step);
  }
  return d;
}

VectorXd Immersion::push(const VectorXd& y, const VectorXd& v) const {
  return differential(y) * v;
}

double Immersion::isometry_residual(const VectorXd& y) const {
  const MatrixXd d = differential(y);
  const MatrixXd pulled = d.transpose() * ambient.G(psi(y)) * d;
  return (pulled - chart.full_metric(y)).cwiseAbs().maxCoeff();
}

VectorXd z_vector(int m) {
  VectorXd z = VectorXd::Zero(m + 1);
  z[0] = 1.0;
  return z;
}

double admissibility_residual(const charts::LightlikeChart& chart,
                              const Frame& b) {
  const MatrixXd h = chart.H(b.y);
  const MatrixXd spatial = b.e.bottomRows(chart.m);
  return (spatial.transpose() * h * spatial -
          MatrixXd::Identity(chart.m, chart.m))
      .cwiseAbs()
      .maxCoeff();
}

Frame standard_frame(const charts::LightlikeChart& chart, const VectorXd& y) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(chart.H(y));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("standard_frame: H not positive definite");
  Frame b;
  b.y = y;
  b.e = MatrixXd::Zero(chart.m + 1, chart.m);
  b.e.bottomRows(chart.m) = es.operatorInverseSqrt();
  return b;
}

Frame frame_action(const Frame& b, const lie::HElement& sigma) {
  const int m = b.m();
  Frame out;
  out.y = b.y;
  out.e = b.e * sigma.g;
  out.e.row(0) -= (sigma.g.transpose() * sigma.w).transpose();
  return out;
}

NSection gs_section(const charts::LightlikeChart& chart, const Frame& b) {
  const MatrixXd cols = b.e;
  const int m = chart.m;
  const auto hfield = chart.H;
  return [cols, m, hfield](const VectorXd& yy) {
    const MatrixXd h = hfield(yy);
    Frame out;
    out.y = yy;
    out.e = cols;
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < j; ++k)
        out.e.col(j) -=
            out.e.col(j).tail(m).dot(h * out.e.col(k).tail(m)) * out.e.col(k);
      const double n2 = out.e.col(j).tail(m).dot(h * out.e.col(j).tail(m));
      out.e.col(j) /= std::sqrt(n2);
    }
    return out;
  };
}

lorentz::NullFrame lift_frame(const Immersion& imm, const Frame& b) {
  const MatrixXd d = imm.differential(b.y);
  const VectorXd l_plus = d * z_vector(b.m());
  const MatrixXd w = d * b.e;
  return lorentz::complete_null_frame(imm.ambient, imm.psi(b.y), l_plus, w);
}

namespace {

// covariant t-derivative at t = 0 of a field given along an ambient curve
VectorXd cov_on_curve(const lorentz::LorentzChart& amb, const VectorXd& x0,
                      const VectorXd& xdot, const VectorXd& f_plus,
                      const VectorXd& f_minus, const VectorXd& f0, double h) {
  VectorXd d = (f_plus - f_minus) / (2.0 * h);
  const auto gamma = lorentz::christoffels(amb, x0);
  for (int k = 0; k < amb.dim; ++k) d[k] += xdot.dot(gamma[k] * f0);
  return d;
}

}  // namespace

lie::Algebra omega_eval(const Immersion& imm, const NSection& section,
                        const VectorXd& y, const VectorXd& v,
                        const lie::Algebra& vertical) {
  const int m = imm.chart.m;
  if (v.norm() == 0.0) return vertical;
  const lorentz::NullFrame f0 = lift_frame(imm, section(y));
  const MatrixXd g = imm.ambient.G(f0.point);
  const VectorXd glm = g * f0.l_minus;
  const MatrixXd gw = g * f0.w;

  auto raw = [&](double h) {
    const lorentz::NullFrame fp = lift_frame(imm, section(y + h * v));
    const lorentz::NullFrame fm = lift_frame(imm, section(y - h * v));
    const VectorXd xdot = (fp.point - fm.point) / (2.0 * h);
    lie::Algebra out(m);
    const VectorXd dlp = cov_on_curve(imm.ambient, f0.point, xdot, fp.l_plus,
                                      fm.l_plus, f0.l_plus, h);
    out.a = dlp.dot(glm);
    out.X = gw.transpose() * dlp;
    for (int j = 0; j < m; ++j) {
      const VectorXd dej =
          cov_on_curve(imm.ambient, f0.point, xdot, fp.w.col(j), fm.w.col(j),
                       f0.w.col(j), h);
      out.zrow[j] = dej.dot(glm);
      out.A.col(j) = gw.transpose() * dej;
    }
    out.A = 0.5 * (out.A - out.A.transpose()).eval();
    return out;
  };
  // one Richardson level keeps the truncation error well below the
  // frame-independence tolerances
  const lie::Algebra out = (1.0 / 3.0) * (4.0 * raw(imm.fd_step / 2.0) -
                                          raw(imm.fd_step));
  return out + vertical;
}

lie::Algebra omega_eval(const Immersion& imm, const Frame& b, const VectorXd& v,
                        const lie::Algebra& vertical) {
  return omega_eval(imm, gs_section(imm.chart, b), b.y, v, vertical);
}

ExpansionResult expansion(const Immersion& imm, const VectorXd& y) {
  const VectorXd nz = nabla_z(imm, y, z_vector(imm.chart.m));
  const VectorXd z_amb = imm.push(y, z_vector(imm.chart.m));
  ExpansionResult res;
  res.lambda = nz.dot(z_amb) / z_amb.squaredNorm();
  res.residual = (nz - res.lambda * z_amb).norm() / (1.0 + nz.norm());
  return res;
}

VectorXd nabla_z(const Immersion& imm, const VectorXd& y, const VectorXd& u) {
  const double h = imm.fd_step;
  const VectorXd z = z_vector(imm.chart.m);
  auto zf = [&](double t) { return imm.push(y + t * u, z); };
  auto cur = [&](double t) { return imm.psi(y + t * u); };
  const VectorXd xdot = (cur(h) - cur(-h)) / (2.0 * h);
  return cov_on_curve(imm.ambient, cur(0.0), xdot, zf(h), zf(-h), zf(0.0), h);
}

double null_second_fundamental_form(const Immersion& imm, const VectorXd& y,
                                    const VectorXd& u, const VectorXd& v) {
  const VectorXd nz = nabla_z(imm, y, u);
  return nz.dot(imm.ambient.G(imm.psi(y)) * imm.push(y, v));
}

std::pair<VectorXd, lie::Algebra> OmegaMatrix::invert(
    const lie::Algebra& target) const {
  const int m = b.m();
  Eigen::FullPivLU<MatrixXd> lu(mat);
  if (!lu.isInvertible())
    throw std::invalid_argument("OmegaMatrix: connection not invertible");
  const VectorXd c = lu.solve(target.vectorize());
  VectorXd v = VectorXd::Zero(m + 1);
  for (int j = 0; j <= m; ++j) v += c[j] * horizontal[j];
  const auto hb = lie::Algebra::h_basis(m);
  lie::Algebra vertical(m);
  for (size_t k = 0; k < hb.size(); ++k)
    vertical = vertical + c[m + 1 + static_cast<int>(k)] * hb[k];
  return {v, vertical};
}

OmegaMatrix assemble_omega(const Immersion& imm, const Frame& b) {
  const int m = b.m();
  const int dim = lie::Algebra::g_dim(m);
  OmegaMatrix out;
  out.b = b;
  out.mat.resize(dim, dim);
  const NSection section = gs_section(imm.chart, b);
  const lie::Algebra zero(m);
  out.horizontal.push_back(z_vector(m));
  for (int j = 0; j < m; ++j) out.horizontal.push_back(b.e.col(j));
  for (int j = 0; j <= m; ++j)
    out.mat.col(j) =
        omega_eval(imm, section, b.y, out.horizontal[j], zero).vectorize();
  const auto hb = lie::Algebra::h_basis(m);
  for (size_t k = 0; k < hb.size(); ++k)
    out.mat.col(m + 1 + static_cast<int>(k)) = hb[k].vectorize();
  return out;
}

RankReport cartan_rank_test(const Immersion& imm, const Frame& b,
                            double threshold) {
  const OmegaMatrix om = assemble_omega(imm, b);
  Eigen::JacobiSVD<MatrixXd> svd(om.mat);
  RankReport rep;
  rep.largest_sv = svd.singularValues()[0];
  rep.smallest_sv = svd.singularValues()[svd.singularValues().size() - 1];
  rep.relative_gap = rep.smallest_sv / rep.largest_sv;
  rep.invertible = rep.relative_gap > threshold;
  return rep;
}

double extract_h_omega(const Immersion& imm, const Frame& b, const VectorXd& u,
                       const VectorXd& v) {
  const NSection section = gs_section(imm.chart, b);
  const lie::Algebra zero(b.m());
  const lie::QuotVec qu =
      lie::quotient_project(omega_eval(imm, section, b.y, u, zero));
  const lie::QuotVec qv =
      lie::quotient_project(omega_eval(imm, section, b.y, v, zero));
  return lie::quotient_metric(qu, qv);
}

VectorXd extract_z_omega(const Immersion& imm, const Frame& b) {
  const OmegaMatrix om = assemble_omega(imm, b);
  return om.invert(lie::Algebra::grading_element(b.m())).first;
}

std::pair<lie::QuotVec, lie::QuotVec> soldering_eval(const Immersion& imm,
                                                     const Frame& b,
                                                     const VectorXd& v,
                                                     const lie::Algebra& vertical) {
  const int m = b.m();
  MatrixXd frame_mat(m + 1, m + 1);
  frame_mat.col(0) = z_vector(m);
  frame_mat.rightCols(m) = b.e;
  const VectorXd c = frame_mat.partialPivLu().solve(v);
  lie::QuotVec frame_route(c[0], c.tail(m));
  const lie::QuotVec omega_route =
      lie::quotient_project(omega_eval(imm, b, v, vertical));
  return {frame_route, omega_route};
}

lie::Algebra curvature_function(const Immersion& imm, const Frame& b,
                                const lie::QuotVec& x1, const lie::QuotVec& x2) {
  const int m = b.m();
  const NSection section = gs_section(imm.chart, b);
  const lie::Algebra zero(m);
  // map from tangents to quotient values on the frame basis
  MatrixXd phi(m + 1, m + 1);
  std::vector<VectorXd> basis;
  basis.push_back(z_vector(m));
  for (int j = 0; j < m; ++j) basis.push_back(b.e.col(j));
  for (int j = 0; j <= m; ++j) {
    const lie::QuotVec q =
        lie::quotient_project(omega_eval(imm, section, b.y, basis[j], zero));
    phi(0, j) = q.a;
    phi.col(j).tail(m) = q.X;
  }
  Eigen::FullPivLU<MatrixXd> lu(phi);
  if (!lu.isInvertible())
    throw std::invalid_argument("curvature_function: rank test fails");
  auto tangent = [&](const lie::QuotVec& q) {
    VectorXd rhs(m + 1);
    rhs[0] = q.a;
    rhs.tail(m) = q.X;
    const VectorXd c = lu.solve(rhs);
    VectorXd v = VectorXd::Zero(m + 1);
    for (int j = 0; j <= m; ++j) v += c[j] * basis[j];
    return v;
  };
  const VectorXd w1 = imm.push(b.y, tangent(x1));
  const VectorXd w2 = imm.push(b.y, tangent(x2));
  const lorentz::NullFrame u = lift_frame(imm, section(b.y));
  const MatrixXd f = u.columns();
  MatrixXd rf(imm.ambient.dim, imm.ambient.dim);
  for (int j = 0; j < imm.ambient.dim; ++j)
    rf.col(j) = lorentz::riemann(imm.ambient, u.point, w1, w2, f.col(j));
  const MatrixXd k = f.partialPivLu().solve(rf);
  return lie::Algebra::from_matrix(k, 1e-3);
}

FlatnessReport flatness_diagnostics(const Immersion& imm, int samples,
                                    std::uint64_t seed, double tol) {
  const int m = imm.chart.m;
  Rng rng(seed);
  FlatnessReport rep;
  rep.samples = samples;
  std::vector<lie::QuotVec> quots;
  quots.emplace_back(1.0, VectorXd::Zero(m));
  for (int i = 0; i < m; ++i) {
    VectorXd x = VectorXd::Zero(m);
    x[i] = 1.0;
    quots.emplace_back(0.0, x);
  }
  for (int k = 0; k < samples; ++k) {
    const VectorXd y = imm.chart.domain.sample(rng);
    const Frame b =
        frame_action(standard_frame(imm.chart, y), lie::random_h_element(m, rng));
    for (int i = 0; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j) {
        const double nk = curvature_function(imm, b, quots[i], quots[j]).norm();
        rep.max_curvature = std::max(rep.max_curvature, nk);
        if (i == 0) rep.max_z_curvature = std::max(rep.max_z_curvature, nk);
      }
  }
  rep.model_flat = rep.max_curvature <= tol;
  rep.scale_bundle_flat = rep.max_z_curvature <= tol;
  if (rep.model_flat || rep.scale_bundle_flat) {
    Rng rng2(seed + 1);
    for (int k = 0; k < samples; ++k) {
      const VectorXd y = imm.chart.domain.sample(rng2);
      const Frame b = standard_frame(imm.chart, y);
      const double lam = expansion(imm, y).lambda;
      VectorXd u = VectorXd::Zero(m + 1), v = VectorXd::Zero(m + 1);
      u.tail(m) = rng2.gaussian_vec(m);
      v.tail(m) = rng2.gaussian_vec(m);
      const double lhs = extract_h_omega(imm, b, u, v);
      const double rhs = lam * lam * charts::chart_metric(imm.chart, y, u, v);
      rep.max_homega_deviation = std::max(
          rep.max_homega_deviation, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
  }
  return rep;
}

HorizontalReport horizontal_preservation_check(const Immersion& imm,
                                               const ChartDiffeo& f,
                                               int samples, std::uint64_t seed) {
  const int m = imm.chart.m;
  Rng rng(seed);
  HorizontalReport rep;
  const VectorXd z = z_vector(m);
  int done = 0;
  int attempts = 0;
  while (done < samples && attempts < 50 * samples) {
    ++attempts;
    const VectorXd y = imm.chart.domain.sample(rng);
    const VectorXd fy = f.f(y);
    if (!imm.chart.domain.contains(fy, 1e-9)) continue;
    const MatrixXd dfy = f.df(y);
    // precondition: f preserves h and Z
    rep.isometry_residual =
        std::max(rep.isometry_residual, (dfy * z - z).norm());
    for (int t = 0; t < 2; ++t) {
      VectorXd u = rng.gaussian_vec(m + 1), v = rng.gaussian_vec(m + 1);
      const double a = charts::chart_metric(imm.chart, y, u, v);
      const double bb =
          charts::chart_metric(imm.chart, fy, dfy * u, dfy * v);
      rep.isometry_residual =
          std::max(rep.isometry_residual, std::abs(a - bb));
    }
    const Frame b =
        frame_action(standard_frame(imm.chart, y), lie::random_h_element(m, rng));
    const OmegaMatrix om = assemble_omega(imm, b);
    const NSection s = gs_section(imm.chart, b);
    // section pushed through f
    NSection s_pushed = [&](const VectorXd& yy) {
      const VectorXd y0 = f.finv(yy);
      Frame fb;
      fb.y = yy;
      fb.e = f.df(y0) * s(y0).e;
      return fb;
    };
    std::vector<lie::Algebra> gens;
    gens.push_back(lie::Algebra::grading_element(m));
    for (int j = 0; j < m; ++j)
      gens.push_back(lie::Algebra::minus_one_generator(m, j));
    for (const auto& ej : gens) {
      const auto [v_j, y_j] = om.invert(ej);
      const lie::Algebra value =
          omega_eval(imm, s_pushed, fy, dfy * v_j, y_j);
      rep.max_residual = std::max(rep.max_residual, (value - ej).norm());
    }
    ++done;
  }
  rep.samples = done;
  return rep;
}

KossowskiResult kossowski_curvature(const Immersion& imm, const VectorXd& y,
                                    const MatrixXd& v) {
  const int m = static_cast<int>(v.cols());
  const MatrixXd g = imm.ambient.G(imm.psi(y));
  const MatrixXd d = imm.differential(y);
  MatrixXd num(m, m), den(m, m);
  for (int i = 0; i < m; ++i) {
    const VectorXd nzi = nabla_z(imm, y, v.col(i));
    for (int j = 0; j < m; ++j) {
      num(i, j) = nzi.dot(g * (d * v.col(j)));
      den(i, j) = (d * v.col(i)).dot(g * (d * v.col(j)));
    }
  }
  KossowskiResult res;
  res.denominator = den.determinant();
  if (std::abs(res.denominator) < 1e-12)
    throw std::invalid_argument("kossowski_curvature: degenerate complement");
  res.kbar = num.determinant() / res.denominator;
  return res;
}

namespace flat_model {

lie::Algebra base_matrix(int m, double r, const VectorXd& y_vel) {
  lie::Algebra out(m);
  out.a = r;
  out.X = y_vel;
  return out;
}

lie::Algebra omega(const lie::HElement& sigma, double r, const VectorXd& y_vel,
                   const lie::Algebra& vertical) {
  const lie::Group g = sigma.materialize();
  return lie::ad_full(lie::inverse(g), base_matrix(sigma.m(), r, y_vel)) +
         vertical;
}

std::tuple<double, VectorXd, lie::Algebra> omega_inverse(
    const lie::HElement& sigma, const lie::Algebra& target) {
  const lie::Group g = sigma.materialize();
  const lie::Algebra w = lie::ad_full(g, target);
  lie::Algebra vert(w.m);
  vert.A = w.A;
  vert.zrow = w.zrow;
  return {w.a, w.X, lie::ad_full(lie::inverse(g), vert)};
}

double automorphism_residual(const AffineIso& f, const VectorXd& x,
                             const lie::HElement& sigma) {
  const int m = sigma.m();
  const lie::HElement d(-(f.A * f.grad0), f.A);
  double res = 0.0;
  std::vector<lie::Algebra> gens;
  gens.push_back(lie::Algebra::grading_element(m));
  for (int j = 0; j < m; ++j)
    gens.push_back(lie::Algebra::minus_one_generator(m, j));
  for (const auto& ej : gens) {
    const auto [r, yv, vert] = omega_inverse(sigma, ej);
    const double r2 = r + f.grad0.dot(yv);
    const VectorXd yv2 = f.A * yv;
    const lie::Algebra value = omega(d * sigma, r2, yv2, vert);
    res = std::max(res, (value - ej).norm());
  }
  return res;
}

}  // namespace flat_model

}  // namespace llcartan::cartan
