#pragma once

#include "stokes_outflow/core.hpp"
#include "stokes_outflow/resolvent.hpp"

namespace stokes_outflow {

enum class ScalarKind { Heat, Laplace };

/// amplitude * exp(-decay_rate * y).
struct ScalarModeProfile {
  cplx amplitude;
  cplx decay_rate;
  ScalarKind kind;

  cplx value(double y) const { return amplitude * std::exp(-decay_rate * y); }
  cplx dy(double y) const { return -decay_rate * value(y); }
  cplx dyy(double y) const { return decay_rate * decay_rate * value(y); }
};

/// Decaying solution of omega^2 u - mu u'' = 0 with the dynamic row
/// alpha lambda_eps [u] - beta [u'] = h.
ScalarModeProfile heat_dbc_mode(double alpha_b, double beta_b, double mu_diff, double epsilon, cplx lambda,
                                const RVec& xi, cplx h_hat);

ScalarModeProfile heat_dirichlet_mode(double mu_diff, double epsilon, cplx lambda, const RVec& xi, cplx g_hat);

/// Harmonic extension of a Dirichlet trace: p(y) = p0 exp(-|xi| y).
ScalarModeProfile laplace_dirichlet_mode(const RVec& xi, cplx p_trace_hat);

/// Decaying harmonic function with -p'(0) = g_N.
ScalarModeProfile laplace_neumann_mode(const RVec& xi, cplx neumann_hat);

/// Builds the normal-condition solution by composition: pressure from the
/// Dirichlet Laplace kernel with trace Pi h_w (h_w less the normal row of the
/// velocity driven by h_v alone), velocity from heat kernels forced by that
/// pressure, normal velocity by integrating the divergence.
/// Returns the traces at y = 0.
ProfileValue compose_ndo_traces(const ModelParams& params, const Mode& mode, const ModeData& data);

}  // namespace stokes_outflow
