#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stokes_outflow {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

enum class ErrorKind {
  CPViolation,
  BranchCut,
  SingularSymbol,
  SingularBoundarySystem,
  ZeroTangentialMode,
  ZeroModeIncompatible,
  SingularDiscreteSystem,
  ParityIncompatible,
  EdgeCompatibilityViolated,
  MissingTrace,
  NonSolenoidal,
  ParseError,
  UnknownKey,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception; `kind()` identifies the failure class.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Model constants. kappa and sigma are derived and kept consistent by make_params.
struct ModelParams {
  double alpha = 1.0;
  double reynolds = 1.0;
  double v_out = 0.0;
  double epsilon = 0.0;
  double kappa = 1.0;
  double sigma = 2.0;
  /// Friction coefficient of the Navier wall row; zero means perfect slip.
  double wall_friction = 0.0;
};

ModelParams make_params(double alpha, double reynolds, double v_out, double epsilon);

/// One Laplace-Fourier mode with the abbreviations lambda_eps, zeta, omega.
struct Mode {
  cplx lambda;
  cplx lambda_eps;
  RVec xi;
  RVec zeta;
  double zeta_abs = 0.0;
  cplx omega;

  /// Space dimension n (one normal plus n-1 tangential directions).
  std::size_t dim() const { return xi.size() + 1; }
};

Mode make_mode(const ModelParams& params, cplx lambda, RVec xi);

enum class BoundaryCondition { TDO, NDO, FDO, Dirichlet, Navier, Neumann };

const char* to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(const std::string& name);

/// Fourier-Laplace boundary datum split into tangential and normal parts.
struct ModeData {
  CVec h_v;
  cplx h_w;
};

/// Magnitude of a boundary datum, used to scale residual tolerances.
double data_norm(const ModeData& data);

/// Relative difference |a-b| / max(|a|,|b|,tiny).
double rel_diff(cplx a, cplx b);

}  // namespace stokes_outflow
