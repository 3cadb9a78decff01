#include "stokes_outflow/scalar_kernels.hpp"

#include <cmath>

#include "stokes_outflow/symbols.hpp"

namespace stokes_outflow {

namespace {

double norm_of(const RVec& xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return std::sqrt(s);
}

cplx heat_omega(double mu_diff, double epsilon, cplx lambda, double xi_abs) {
  const cplx le = epsilon + lambda;
  if (le.imag() == 0.0 && le.real() <= 0.0)
    throw Error(ErrorKind::BranchCut, "lambda + epsilon lies on the closed negative real axis");
  return std::sqrt(le + mu_diff * xi_abs * xi_abs);
}

}  // namespace

ScalarModeProfile heat_dbc_mode(double alpha_b, double beta_b, double mu_diff, double epsilon, cplx lambda,
                                const RVec& xi, cplx h_hat) {
  const double xa = norm_of(xi);
  const cplx sym = dbc_parabolic_symbol(alpha_b, beta_b, mu_diff, epsilon, lambda, xa);
  const cplx w = heat_omega(mu_diff, epsilon, lambda, xa);
  return {sym * h_hat, w / std::sqrt(mu_diff), ScalarKind::Heat};
}

ScalarModeProfile heat_dirichlet_mode(double mu_diff, double epsilon, cplx lambda, const RVec& xi, cplx g_hat) {
  if (!(mu_diff > 0.0)) throw Error(ErrorKind::InvalidArgument, "heat_dirichlet_mode: mu must be positive");
  const cplx w = heat_omega(mu_diff, epsilon, lambda, norm_of(xi));
  return {g_hat, w / std::sqrt(mu_diff), ScalarKind::Heat};
}

ScalarModeProfile laplace_dirichlet_mode(const RVec& xi, cplx p_trace_hat) {
  const double xa = norm_of(xi);
  if (xa == 0.0) throw Error(ErrorKind::ZeroTangentialMode, "Laplace kernel needs |xi| > 0");
  return {p_trace_hat, xa, ScalarKind::Laplace};
}

ScalarModeProfile laplace_neumann_mode(const RVec& xi, cplx neumann_hat) {
  const double xa = norm_of(xi);
  if (xa == 0.0) throw Error(ErrorKind::ZeroTangentialMode, "Laplace kernel needs |xi| > 0");
  return {neumann_hat / xa, xa, ScalarKind::Laplace};
}

namespace {

/// Traces of the velocity driven by tangential data h_v and a pressure with trace p0.
ProfileValue velocity_traces(const ModelParams& params, const Mode& mode, const CVec& h_v, cplx p0) {
  const std::size_t nt = mode.xi.size();
  const ScalarModeProfile p = laplace_dirichlet_mode(mode.xi, p0);
  const double mu = 1.0 / params.reynolds;
  const double xa = norm_of(mode.xi);
  ProfileValue t;
  t.v_hat.resize(nt);
  t.dy_v_hat.resize(nt);
  t.dyy_v_hat.resize(nt);
  // Particular part: lambda_eps A = -i xi p0 for forcing proportional to exp(-|xi| y).
  cplx w_trace = 0.0;
  cplx dw_trace = 0.0;
  for (std::size_t k = 0; k < nt; ++k) {
    const cplx ixi(0.0, mode.xi[k]);
    const cplx a_part = -ixi * p.amplitude / mode.lambda_eps;
    const ScalarModeProfile h = heat_dirichlet_mode(mu, params.epsilon, mode.lambda, mode.xi, h_v[k] - a_part);
    t.v_hat[k] = h.value(0.0) + a_part;
    t.dy_v_hat[k] = h.dy(0.0) - xa * a_part;
    t.dyy_v_hat[k] = h.dyy(0.0) + xa * xa * a_part;
    // w(0) = int_0^inf i xi . v dy, since w' = -i xi . v and w decays.
    w_trace += ixi * (h.amplitude / h.decay_rate + a_part / xa);
    dw_trace -= ixi * t.v_hat[k];
  }
  t.w_hat = w_trace;
  t.dy_w_hat = dw_trace;
  t.dyy_w_hat = 0.0;
  t.p_hat = p.value(0.0);
  t.dy_p_hat = p.dy(0.0);
  return t;
}

}  // namespace

ProfileValue compose_ndo_traces(const ModelParams& params, const Mode& mode, const ModeData& data) {
  const SigmaPi sp = ndo_symbols(params, mode);
  // Tangential data feeds the normal row through w; Pi acts on what remains of h_w.
  const ProfileValue tv = velocity_traces(params, mode, data.h_v, 0.0);
  const cplx row = params.alpha * mode.lambda_eps * tv.w_hat - params.sigma * tv.dy_w_hat;
  return velocity_traces(params, mode, data.h_v, sp.pi_sym * (data.h_w - row));
}

}  // namespace stokes_outflow
