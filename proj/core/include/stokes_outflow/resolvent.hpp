#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow {

/// One mode of (v, w, p) as a combination of E1 = e^{-sqrt(Re) omega y} and
/// E2 = e^{-sqrt(Re) |zeta| y} with boundary amplitudes (tau_v, tau_w):
/// v = omega tau_v E1 - i zeta tau_w E2, w = (i zeta . tau_v) E1 + |zeta| tau_w E2,
/// p = lambda_eps tau_w E2 / sqrt(Re) + p_const.
/// Evaluation uses the equivalent coefficients a_v = omega tau_v - i zeta tau_w and
/// b = (omega - |zeta|) tau_w against E1 and G = (E2 - E1) / (omega - |zeta|), which
/// stay bounded when omega approaches |zeta|.
/// p_const carries the constant pressure of the zero tangential mode.
struct ModeProfile {
  CVec tau_v;
  cplx tau_w;
  Mode mode;
  ModelParams params;
  cplx p_const = 0.0;
  CVec a_v;
  cplx b = 0.0;
};

/// Profile with the given amplitudes; fills the evaluation coefficients.
ModeProfile profile_from_amplitudes(const ModelParams& params, const Mode& mode, CVec tau_v, cplx tau_w);

struct ProfileValue {
  CVec v_hat;
  cplx w_hat;
  cplx p_hat;
  CVec dy_v_hat;
  cplx dy_w_hat;
  cplx dy_p_hat;
  CVec dyy_v_hat;
  cplx dyy_w_hat;
};

struct ModeResidual {
  double momentum_res = 0.0;
  double div_res = 0.0;
  double bc_res = 0.0;
};

/// Left-hand sides of the boundary rows evaluated on given traces.
struct BoundaryRows {
  CVec tangential;
  cplx normal;
};

/// Evaluates the boundary rows of `bc` from the traces of `value` at y = 0.
BoundaryRows boundary_rows(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                           const ProfileValue& value);

/// Solves the n x n boundary system for |zeta| > 0.
ModeProfile solve_mode(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                       const ModeData& data);

/// Zero tangential mode: only the omega-exponential survives (tau_w = 0).
/// Conditions whose normal row is [w] = h_w require h_w = 0; the others take
/// up h_w by a constant pressure.
ModeProfile solve_zero_mode(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                            const ModeData& data);

/// Dispatches to solve_mode or solve_zero_mode.
ModeProfile solve_any_mode(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                           const ModeData& data);

/// Values and exact y-derivatives of the profile.
ProfileValue eval_profile(const ModeProfile& profile, double y);

/// Default residual sample set {0, 0.1, 0.5, 1, 2, 5} / max(1, |omega|).
RVec default_residual_samples(const Mode& mode);

ModeResidual residual_mode(const ModeProfile& profile, BoundaryCondition bc, const ModeData& data,
                           const RVec& y_samples);

/// Periodic tangential grid; one entry per tangential direction.
struct TangentialGrid {
  std::vector<std::size_t> n;
  RVec length;

  std::size_t dims() const { return n.size(); }
  std::size_t size() const;
  /// Wave number of FFT index k along direction d (negative above n/2).
  double wavenumber(std::size_t d, std::size_t k) const;
  double coord(std::size_t d, std::size_t k) const { return length[d] * double(k) / double(n[d]); }
  /// Multi-index of a row-major flat index.
  std::vector<std::size_t> unflatten(std::size_t flat) const;
};

/// Boundary datum h = (h_v, h_w) sampled on a tangential grid (row-major).
struct BoundaryField {
  TangentialGrid grid;
  std::vector<CVec> h_v;
  CVec h_w;
};

BoundaryField zero_boundary_field(const TangentialGrid& grid);

/// Per-mode solution of a boundary field. Modes on the Nyquist line are
/// stored once per sign combination and averaged during synthesis.
struct FieldSpectrum {
  ModelParams params;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  cplx lambda;
  TangentialGrid grid;
  /// For each flat index, the profiles of all sign variants with unit weight sum.
  std::vector<std::vector<ModeProfile>> profiles;
  std::vector<ModeData> data;
};

FieldSpectrum solve_spectrum(const ModelParams& params, BoundaryCondition bc, const BoundaryField& field,
                             cplx lambda);

/// Extracts a per-mode scalar from a profile value and the wave vector.
using ModeExtractor = std::function<cplx(const ProfileValue&, const RVec& xi)>;

/// Inverse discrete Fourier synthesis of extractor(profile(y)) on the tangential grid.
CVec synthesize(const FieldSpectrum& spec, double y, const ModeExtractor& extractor);

/// Physical-space solution on tangential grid x normal levels.
/// Arrays are indexed [iy * grid.size() + flat].
struct GridField {
  TangentialGrid grid;
  RVec y;
  std::vector<CVec> v;
  CVec w;
  CVec p;
  /// Spectral divergence div_x v + dw/dy.
  CVec div;
};

GridField solve_field(const ModelParams& params, BoundaryCondition bc, const BoundaryField& field,
                      cplx lambda, const RVec& y_levels);

GridField synthesize_field(const FieldSpectrum& spec, const RVec& y_levels);

/// CSV with a '#' header line recording params and lambda, then columns
/// x_1..x_{n-1}, y, then re/im pairs for u_1..u_{n-1}, w, p.
std::string grid_field_csv(const GridField& field, const ModelParams& params, BoundaryCondition bc,
                           cplx lambda);

}  // namespace stokes_outflow
