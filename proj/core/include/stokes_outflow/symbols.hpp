#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow {

/// Moduli below this are treated as vanishing denominators.
inline constexpr double kSingularThreshold = 1e-300;

/// alpha*sqrt(Re)*lambda_eps*omega + Re*kappa*omega^2.
cplx phi(const ModelParams& params, const Mode& mode);

/// Applies (1/phi)(1 + i zeta (x) i zeta / (phi + |zeta|^2)) to vec.
CVec b_inverse_apply(const ModelParams& params, const Mode& mode, const CVec& vec);

/// Applies B = phi - i zeta (x) i zeta; the inverse of b_inverse_apply.
CVec b_apply(const ModelParams& params, const Mode& mode, const CVec& vec);

struct TdoComponents {
  cplx m1, m2, m3, mu;
  /// Assembled pressure-gradient symbol (m1 + m2 + m3 mu) omega (omega + |zeta|).
  cplx M;
};

TdoComponents tdo_components(const ModelParams& params, const Mode& mode);

/// Compact form (phi + |zeta|^2)(omega + |zeta|) / (alpha sqrt(Re) lambda_eps + Re kappa (omega + |zeta|)).
cplx tdo_compact_symbol(const ModelParams& params, const Mode& mode);

struct SigmaPi {
  cplx sigma_sym;
  cplx pi_sym;
};

SigmaPi ndo_symbols(const ModelParams& params, const Mode& mode);

/// Full-condition symbols from the closed-form numerators over the shared denominator.
SigmaPi fdo_symbols(const ModelParams& params, const Mode& mode);

/// Second route to the full-condition pressure symbol:
/// lambda_eps (beta + beta_v beta_w i zeta^T B^{-1} i zeta)^{-1}, evaluated in a
/// cancellation-free arrangement.
cplx fdo_pi_via_inverse(const ModelParams& params, const Mode& mode);

/// Dirichlet-trace symbol of the scalar parabolic problem with a dynamic boundary row.
cplx dbc_parabolic_symbol(double alpha_b, double beta_b, double mu_diff, double epsilon,
                          cplx lambda, double xi_abs);

enum class SymbolSelector { All, Tdo, Ndo, Fdo };

SymbolSelector parse_symbol_selector(const std::string& name);

/// Sample statistics for one sampled quantity.
struct SymbolStats {
  std::string name;
  double sup_abs = 0.0;
  /// Infimum over samples of |1/s|.
  double inf_abs_recip = 0.0;
  double arg_min = 0.0;
  double arg_max = 0.0;
  std::size_t violations = 0;
};

struct SymbolReport {
  double theta = 0.0;
  std::size_t n_samples = 0;
  std::vector<SymbolStats> symbols;
  /// Argument-range violations summed over all symbols.
  std::size_t violations = 0;
  /// Samples where some |m_j| exceeded 1 + 1e-9.
  std::size_t bound_exceedances = 0;
  /// Samples where m1 + m2 + m3 = 1 failed to 1e-12.
  std::size_t identity_failures = 0;

  const SymbolStats* find(const std::string& name) const;
};

/// Samples (lambda, z) in Sigma_{pi-theta} x Sigma_{theta/2} and checks the
/// argument bounds of omega, omega + z and the inverted m_j expressions.
/// Half the samples have arg lambda >= 0 and half arg lambda <= 0; the
/// latter are checked against the mirrored bounds.
SymbolReport sector_verify(const ModelParams& params, double theta, std::size_t n_samples,
                           std::uint64_t rng_seed, SymbolSelector selector = SymbolSelector::All);

std::string symbol_report_csv(const SymbolReport& report);

struct AlphaLimitPoint {
  double alpha;
  SigmaPi symbols;
};

enum class LimitVariant { NDO, FDO };

/// Evaluates Sigma/Pi along a strictly decreasing alpha sequence at a fixed
/// mode (the mode does not depend on alpha). alpha = 0 is accepted.
std::vector<AlphaLimitPoint> alpha_limit_probe(const ModelParams& params_template, const Mode& mode,
                                               const RVec& alpha_sequence,
                                               LimitVariant variant = LimitVariant::NDO);

}  // namespace stokes_outflow
