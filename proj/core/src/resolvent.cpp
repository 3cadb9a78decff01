#include "stokes_outflow/resolvent.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "stokes_outflow/csv.hpp"
#include "stokes_outflow/parallel.hpp"

namespace stokes_outflow {

namespace {

using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CCol = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

constexpr double kMaxCondition = 1e14;

/// Whether the normal row of bc is the plain trace [w] = h_w.
bool normal_row_is_trace(BoundaryCondition bc) {
  return bc == BoundaryCondition::TDO || bc == BoundaryCondition::Dirichlet ||
         bc == BoundaryCondition::Navier;
}

/// omega - |zeta| without cancellation.
cplx omega_minus_zeta(const Mode& m) { return m.lambda_eps / (m.omega + m.zeta_abs); }

/// Profile from the evaluation coefficients; recovers the amplitudes.
ModeProfile profile_from_coefficients(const ModelParams& params, const Mode& mode, CVec a_v, cplx b) {
  ModeProfile p;
  p.mode = mode;
  p.params = params;
  const cplx tw = b == 0.0 ? cplx(0.0) : b / omega_minus_zeta(mode);
  p.tau_v.resize(a_v.size());
  for (std::size_t k = 0; k < a_v.size(); ++k) p.tau_v[k] = (a_v[k] + cplx(0.0, mode.zeta[k]) * tw) / mode.omega;
  p.tau_w = tw;
  p.a_v = std::move(a_v);
  p.b = b;
  return p;
}

/// e^x - 1 for complex x without cancellation near 0.
cplx expm1c(cplx x) {
  const double s = std::sin(0.5 * x.imag());
  return {std::expm1(x.real()) * std::cos(x.imag()) - 2.0 * s * s, std::exp(x.real()) * std::sin(x.imag())};
}

/// Solves A x = b after row/column equilibration; rejects ill-conditioned systems.
CCol solve_dense(CMat a, CCol b) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd rs(n), cs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = a.row(i).cwiseAbs().maxCoeff();
    if (!(m > 0.0) || !std::isfinite(m))
      throw Error(ErrorKind::SingularBoundarySystem, "boundary system has a vanishing row");
    rs(i) = 1.0 / m;
  }
  a = rs.asDiagonal() * a;
  b = rs.asDiagonal() * b;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double m = a.col(j).cwiseAbs().maxCoeff();
    if (!(m > 0.0))
      throw Error(ErrorKind::SingularBoundarySystem, "boundary system has a vanishing column");
    cs(j) = 1.0 / m;
  }
  a = a * cs.asDiagonal();
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), smin = sv(n - 1);
  if (!(smin > 0.0) || smax / smin > kMaxCondition) {
    std::ostringstream os;
    os << "condition estimate " << (smin > 0.0 ? smax / smin : INFINITY) << " exceeds " << kMaxCondition;
    throw Error(ErrorKind::SingularBoundarySystem, os.str());
  }
  CCol x = svd.solve(b);
  return cs.asDiagonal() * x;
}

}  // namespace

ModeProfile profile_from_amplitudes(const ModelParams& params, const Mode& mode, CVec tau_v, cplx tau_w) {
  if (tau_v.size() != mode.zeta.size())
    throw Error(ErrorKind::InvalidArgument, "profile_from_amplitudes: tau_v length mismatch");
  ModeProfile p;
  p.mode = mode;
  p.params = params;
  p.a_v.resize(tau_v.size());
  for (std::size_t k = 0; k < tau_v.size(); ++k)
    p.a_v[k] = mode.omega * tau_v[k] - cplx(0.0, mode.zeta[k]) * tau_w;
  p.b = omega_minus_zeta(mode) * tau_w;
  p.tau_v = std::move(tau_v);
  p.tau_w = tau_w;
  return p;
}

ProfileValue eval_profile(const ModeProfile& profile, double y) {
  const Mode& m = profile.mode;
  const double s = std::sqrt(profile.params.reynolds);
  const double z = m.zeta_abs;
  const cplx w = m.omega;
  const cplx d = omega_minus_zeta(m);
  const cplx e1 = std::exp(-s * w * y);
  const double e2 = std::exp(-s * z * y);
  // G = (E2 - E1) / (omega - |zeta|) and its derivatives.
  const cplx g = -e2 * expm1c(-s * d * y) / d;
  const cplx g1 = -s * (z * g - e1);
  const cplx g2 = s * s * (z * z * g - (w + z) * e1);
  const std::size_t nt = m.zeta.size();
  ProfileValue r;
  r.v_hat.resize(nt);
  r.dy_v_hat.resize(nt);
  r.dyy_v_hat.resize(nt);
  const cplx k1 = -s * w;
  cplx iza = 0.0;
  for (std::size_t k = 0; k < nt; ++k) {
    const cplx iz = cplx(0.0, m.zeta[k]);
    const cplx a = profile.a_v[k];
    const cplx c = -iz * profile.b;
    iza += iz * a;
    r.v_hat[k] = a * e1 + c * g;
    r.dy_v_hat[k] = a * k1 * e1 + c * g1;
    r.dyy_v_hat[k] = a * k1 * k1 * e1 + c * g2;
  }
  // w = (c1 + c2) E1 + c2 omega G with c1 = i zeta . a_v / omega, c2 = |zeta| b / omega.
  const cplx c2 = z * profile.b / w;
  const cplx ce = iza / w + c2;
  const cplx cg = c2 * w;
  r.w_hat = ce * e1 + cg * g;
  r.dy_w_hat = ce * k1 * e1 + cg * g1;
  r.dyy_w_hat = ce * k1 * k1 * e1 + cg * g2;
  const cplx bp = profile.b * (w + z) / s;
  r.p_hat = bp * e2 + profile.p_const;
  r.dy_p_hat = -s * z * bp * e2;
  return r;
}

BoundaryRows boundary_rows(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                           const ProfileValue& t) {
  const std::size_t nt = mode.xi.size();
  const double ire = 1.0 / params.reynolds;
  const cplx al = params.alpha * mode.lambda_eps;
  BoundaryRows r;
  r.tangential.resize(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    const cplx ixi = cplx(0.0, mode.xi[k]);
    switch (bc) {
      case BoundaryCondition::TDO:
      case BoundaryCondition::FDO:
        r.tangential[k] = al * t.v_hat[k] - params.kappa * t.dy_v_hat[k] - ire * ixi * t.w_hat;
        break;
      case BoundaryCondition::NDO:
      case BoundaryCondition::Dirichlet:
        r.tangential[k] = t.v_hat[k];
        break;
      case BoundaryCondition::Navier:
        r.tangential[k] = params.wall_friction * t.v_hat[k] - ire * (t.dy_v_hat[k] + ixi * t.w_hat);
        break;
      case BoundaryCondition::Neumann:
        r.tangential[k] = -ire * (t.dy_v_hat[k] + ixi * t.w_hat);
        break;
    }
  }
  switch (bc) {
    case BoundaryCondition::TDO:
    case BoundaryCondition::Dirichlet:
    case BoundaryCondition::Navier:
      r.normal = t.w_hat;
      break;
    case BoundaryCondition::NDO:
    case BoundaryCondition::FDO:
      r.normal = al * t.w_hat - params.sigma * t.dy_w_hat + t.p_hat;
      break;
    case BoundaryCondition::Neumann:
      r.normal = -2.0 * ire * t.dy_w_hat + t.p_hat;
      break;
  }
  return r;
}

ModeProfile solve_mode(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                       const ModeData& data) {
  if (mode.zeta_abs == 0.0)
    throw Error(ErrorKind::ZeroTangentialMode, "solve_mode requires |zeta| > 0");
  const std::size_t nt = mode.xi.size();
  if (data.h_v.size() != nt) throw Error(ErrorKind::InvalidArgument, "solve_mode: h_v length mismatch");
  const auto n = static_cast<Eigen::Index>(nt + 1);
  CMat a(n, n);
  // Column j holds the boundary rows of the unit amplitude vector e_j.
  for (Eigen::Index j = 0; j < n; ++j) {
    CVec av(nt, 0.0);
    cplx bb = 0.0;
    if (static_cast<std::size_t>(j) < nt)
      av[j] = 1.0;
    else
      bb = 1.0;
    const ProfileValue t = eval_profile(profile_from_coefficients(params, mode, av, bb), 0.0);
    const BoundaryRows r = boundary_rows(params, mode, bc, t);
    for (std::size_t k = 0; k < nt; ++k) a(static_cast<Eigen::Index>(k), j) = r.tangential[k];
    a(n - 1, j) = r.normal;
  }
  CCol b(n);
  for (std::size_t k = 0; k < nt; ++k) b(static_cast<Eigen::Index>(k)) = data.h_v[k];
  b(n - 1) = data.h_w;
  const CCol x = solve_dense(a, b);
  CVec av(nt);
  for (std::size_t k = 0; k < nt; ++k) av[k] = x(static_cast<Eigen::Index>(k));
  return profile_from_coefficients(params, mode, std::move(av), x(n - 1));
}

ModeProfile solve_zero_mode(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                            const ModeData& data) {
  const std::size_t nt = mode.xi.size();
  if (data.h_v.size() != nt) throw Error(ErrorKind::InvalidArgument, "solve_zero_mode: h_v length mismatch");
  for (double x : mode.xi)
    if (x != 0.0) throw Error(ErrorKind::InvalidArgument, "solve_zero_mode requires xi = 0");
  if (normal_row_is_trace(bc) && data.h_w != 0.0)
    throw Error(ErrorKind::ZeroModeIncompatible,
                std::string(to_string(bc)) + " forces a vanishing mean normal trace");
  // With xi = 0 the rows decouple: tangential row k only sees tau_v[k].
  CVec unit(nt, 0.0);
  if (nt > 0) unit[0] = 1.0;
  const ProfileValue t = eval_profile(profile_from_amplitudes(params, mode, unit, 0.0), 0.0);
  const cplx coeff = nt > 0 ? boundary_rows(params, mode, bc, t).tangential[0] : cplx(1.0);
  if (!(std::abs(coeff) > 0.0) || !std::isfinite(std::abs(coeff)))
    throw Error(ErrorKind::SingularBoundarySystem, "zero-mode tangential row vanishes");
  CVec tv(nt);
  for (std::size_t k = 0; k < nt; ++k) tv[k] = data.h_v[k] / coeff;
  ModeProfile p = profile_from_amplitudes(params, mode, std::move(tv), 0.0);
  if (!normal_row_is_trace(bc)) p.p_const = data.h_w;
  return p;
}

ModeProfile solve_any_mode(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                           const ModeData& data) {
  return mode.zeta_abs == 0.0 ? solve_zero_mode(params, mode, bc, data) : solve_mode(params, mode, bc, data);
}

RVec default_residual_samples(const Mode& mode) {
  const double s = 1.0 / std::max(1.0, std::abs(mode.omega));
  return {0.0, 0.1 * s, 0.5 * s, 1.0 * s, 2.0 * s, 5.0 * s};
}

ModeResidual residual_mode(const ModeProfile& profile, BoundaryCondition bc, const ModeData& data,
                           const RVec& y_samples) {
  if (y_samples.empty()) throw Error(ErrorKind::InvalidArgument, "residual_mode: empty sample set");
  const Mode& m = profile.mode;
  const double ire = 1.0 / profile.params.reynolds;
  const cplx w2 = m.omega * m.omega;
  const std::size_t nt = m.xi.size();
  ModeResidual r;
  for (double y : y_samples) {
    if (y < 0.0) throw Error(ErrorKind::InvalidArgument, "residual_mode: negative sample");
    const ProfileValue v = eval_profile(profile, y);
    double tan2 = 0.0;
    cplx div = v.dy_w_hat;
    for (std::size_t k = 0; k < nt; ++k) {
      const cplx ixi = cplx(0.0, m.xi[k]);
      tan2 += std::norm(w2 * v.v_hat[k] - ire * v.dyy_v_hat[k] + ixi * v.p_hat);
      div += ixi * v.v_hat[k];
    }
    const double nor = std::abs(w2 * v.w_hat - ire * v.dyy_w_hat + v.dy_p_hat);
    r.momentum_res = std::max({r.momentum_res, std::sqrt(tan2), nor});
    r.div_res = std::max(r.div_res, std::abs(div));
  }
  const BoundaryRows b = boundary_rows(profile.params, m, bc, eval_profile(profile, 0.0));
  double bc2 = std::norm(b.normal - data.h_w);
  for (std::size_t k = 0; k < nt; ++k) bc2 += std::norm(b.tangential[k] - data.h_v[k]);
  r.bc_res = std::sqrt(bc2);
  return r;
}

std::size_t TangentialGrid::size() const {
  std::size_t s = 1;
  for (auto k : n) s *= k;
  return s;
}

double TangentialGrid::wavenumber(std::size_t d, std::size_t k) const {
  const auto nn = static_cast<long long>(n[d]);
  long long kk = static_cast<long long>(k);
  if (kk > nn / 2) kk -= nn;
  return 2.0 * std::numbers::pi * double(kk) / length[d];
}

std::vector<std::size_t> TangentialGrid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(n.size());
  for (std::size_t d = n.size(); d-- > 0;) {
    idx[d] = flat % n[d];
    flat /= n[d];
  }
  return idx;
}

BoundaryField zero_boundary_field(const TangentialGrid& grid) {
  BoundaryField f;
  f.grid = grid;
  f.h_v.assign(grid.dims(), CVec(grid.size(), 0.0));
  f.h_w.assign(grid.size(), 0.0);
  return f;
}

namespace {

void validate_grid(const TangentialGrid& g) {
  if (g.n.empty() || g.n.size() != g.length.size())
    throw Error(ErrorKind::InvalidArgument, "tangential grid: dimension mismatch");
  for (std::size_t d = 0; d < g.n.size(); ++d) {
    const auto k = g.n[d];
    if (k == 0 || (k & (k - 1)) != 0)
      throw Error(ErrorKind::InvalidArgument, "tangential grid sizes must be powers of two");
    if (!(g.length[d] > 0.0)) throw Error(ErrorKind::InvalidArgument, "tangential grid length must be positive");
  }
}

}  // namespace

FieldSpectrum solve_spectrum(const ModelParams& params, BoundaryCondition bc, const BoundaryField& field,
                             cplx lambda) {
  const TangentialGrid& g = field.grid;
  validate_grid(g);
  const std::size_t nt = g.dims();
  const std::size_t total = g.size();
  if (field.h_v.size() != nt || field.h_w.size() != total)
    throw Error(ErrorKind::InvalidArgument, "boundary field shape does not match grid");
  for (const auto& c : field.h_v)
    if (c.size() != total) throw Error(ErrorKind::InvalidArgument, "boundary field shape does not match grid");

  std::vector<CVec> hv_hat = field.h_v;
  CVec hw_hat = field.h_w;
  for (auto& c : hv_hat) detail::fft_nd(g.n, c, true);
  detail::fft_nd(g.n, hw_hat, true);

  double hnorm2 = 0.0;
  for (const auto& c : field.h_w) hnorm2 += std::norm(c);
  for (const auto& comp : field.h_v)
    for (const auto& c : comp) hnorm2 += std::norm(c);
  const double hnorm = std::sqrt(hnorm2 / double(total));

  // The zero mode of a trace-type normal datum must vanish; below tolerance it is dropped.
  if (normal_row_is_trace(bc)) {
    if (std::abs(hw_hat[0]) > 1e-12 * std::max(hnorm, 1e-300) && hnorm > 0.0)
      throw Error(ErrorKind::ZeroModeIncompatible,
                  "mean of the prescribed normal trace does not vanish under " + std::string(to_string(bc)));
    hw_hat[0] = 0.0;
  }

  FieldSpectrum spec;
  spec.params = params;
  spec.bc = bc;
  spec.lambda = lambda;
  spec.grid = g;
  spec.profiles.resize(total);
  spec.data.resize(total);
  parallel_for(total, [&](std::size_t flat) {
    ModeData d;
    d.h_v.resize(nt);
    for (std::size_t k = 0; k < nt; ++k) d.h_v[k] = hv_hat[k][flat];
    d.h_w = hw_hat[flat];
    spec.data[flat] = d;
    const auto idx = g.unflatten(flat);
    // Nyquist indices are split evenly between +xi and -xi.
    std::vector<std::size_t> nyq;
    RVec xi(nt);
    for (std::size_t k = 0; k < nt; ++k) {
      xi[k] = g.wavenumber(k, idx[k]);
      if (g.n[k] > 1 && 2 * idx[k] == g.n[k]) nyq.push_back(k);
    }
    const std::size_t variants = std::size_t{1} << nyq.size();
    const double weight = 1.0 / double(variants);
    ModeData dw = d;
    for (auto& c : dw.h_v) c *= weight;
    dw.h_w *= weight;
    auto& out = spec.profiles[flat];
    out.reserve(variants);
    const bool zero_data = data_norm(d) == 0.0;
    for (std::size_t mask = 0; mask < variants; ++mask) {
      RVec x = xi;
      for (std::size_t b = 0; b < nyq.size(); ++b)
        if (mask & (std::size_t{1} << b)) x[nyq[b]] = -x[nyq[b]];
      const Mode mode = make_mode(params, lambda, x);
      if (zero_data) {
        out.push_back(profile_from_amplitudes(params, mode, CVec(nt, 0.0), 0.0));
      } else {
        out.push_back(solve_any_mode(params, mode, bc, dw));
      }
    }
  });
  return spec;
}

CVec synthesize(const FieldSpectrum& spec, double y, const ModeExtractor& extractor) {
  const std::size_t total = spec.grid.size();
  CVec coef(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    cplx acc = 0.0;
    for (const auto& p : spec.profiles[flat]) {
      if (p.tau_w == 0.0 && p.p_const == 0.0 &&
          std::all_of(p.tau_v.begin(), p.tau_v.end(), [](cplx c) { return c == 0.0; }))
        continue;
      acc += extractor(eval_profile(p, y), p.mode.xi);
    }
    coef[flat] = acc;
  }
  detail::fft_nd(spec.grid.n, coef, false);
  return coef;
}

GridField synthesize_field(const FieldSpectrum& spec, const RVec& y_levels) {
  const std::size_t total = spec.grid.size();
  const std::size_t nt = spec.grid.dims();
  GridField f;
  f.grid = spec.grid;
  f.y = y_levels;
  f.v.assign(nt, CVec(total * y_levels.size()));
  f.w.resize(total * y_levels.size());
  f.p.resize(total * y_levels.size());
  f.div.resize(total * y_levels.size());
  parallel_for(y_levels.size(), [&](std::size_t iy) {
    const double y = y_levels[iy];
    auto put = [&](CVec& dst, const CVec& src) {
      std::copy(src.begin(), src.end(), dst.begin() + static_cast<std::ptrdiff_t>(iy * total));
    };
    for (std::size_t k = 0; k < nt; ++k)
      put(f.v[k], synthesize(spec, y, [k](const ProfileValue& v, const RVec&) { return v.v_hat[k]; }));
    put(f.w, synthesize(spec, y, [](const ProfileValue& v, const RVec&) { return v.w_hat; }));
    put(f.p, synthesize(spec, y, [](const ProfileValue& v, const RVec&) { return v.p_hat; }));
    put(f.div, synthesize(spec, y, [](const ProfileValue& v, const RVec& xi) {
          cplx d = v.dy_w_hat;
          for (std::size_t k = 0; k < xi.size(); ++k) d += cplx(0.0, xi[k]) * v.v_hat[k];
          return d;
        }));
  });
  return f;
}

GridField solve_field(const ModelParams& params, BoundaryCondition bc, const BoundaryField& field,
                      cplx lambda, const RVec& y_levels) {
  for (double y : y_levels)
    if (y < 0.0) throw Error(ErrorKind::InvalidArgument, "solve_field: negative y level");
  return synthesize_field(solve_spectrum(params, bc, field, lambda), y_levels);
}

std::string grid_field_csv(const GridField& field, const ModelParams& params, BoundaryCondition bc,
                           cplx lambda) {
  std::ostringstream os;
  const std::size_t nt = field.grid.dims();
  const std::size_t total = field.grid.size();
  os << "# alpha=" << fmt_double(params.alpha) << " reynolds=" << fmt_double(params.reynolds)
     << " v_out=" << fmt_double(params.v_out) << " epsilon=" << fmt_double(params.epsilon)
     << " bc=" << to_string(bc) << " lambda_re=" << fmt_double(lambda.real())
     << " lambda_im=" << fmt_double(lambda.imag()) << '\n';
  for (std::size_t k = 0; k < nt; ++k) os << "x" << (k + 1) << ',';
  os << 'y';
  for (std::size_t k = 0; k < nt; ++k) os << ",u" << (k + 1) << "_re,u" << (k + 1) << "_im";
  os << ",w_re,w_im,p_re,p_im\n";
  for (std::size_t iy = 0; iy < field.y.size(); ++iy) {
    for (std::size_t flat = 0; flat < total; ++flat) {
      const auto idx = field.grid.unflatten(flat);
      const std::size_t at = iy * total + flat;
      for (std::size_t k = 0; k < nt; ++k) os << fmt_double(field.grid.coord(k, idx[k])) << ',';
      os << fmt_double(field.y[iy]);
      for (std::size_t k = 0; k < nt; ++k)
        os << ',' << fmt_double(field.v[k][at].real()) << ',' << fmt_double(field.v[k][at].imag());
      os << ',' << fmt_double(field.w[at].real()) << ',' << fmt_double(field.w[at].imag()) << ','
         << fmt_double(field.p[at].real()) << ',' << fmt_double(field.p[at].imag()) << '\n';
    }
  }
  return os.str();
}

}  // namespace stokes_outflow
