#include "stokes_outflow/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace stokes_outflow {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CPViolation: return "CPViolation";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::SingularSymbol: return "SingularSymbol";
    case ErrorKind::SingularBoundarySystem: return "SingularBoundarySystem";
    case ErrorKind::ZeroTangentialMode: return "ZeroTangentialMode";
    case ErrorKind::ZeroModeIncompatible: return "ZeroModeIncompatible";
    case ErrorKind::SingularDiscreteSystem: return "SingularDiscreteSystem";
    case ErrorKind::ParityIncompatible: return "ParityIncompatible";
    case ErrorKind::EdgeCompatibilityViolated: return "EdgeCompatibilityViolated";
    case ErrorKind::MissingTrace: return "MissingTrace";
    case ErrorKind::NonSolenoidal: return "NonSolenoidal";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

ModelParams make_params(double alpha, double reynolds, double v_out, double epsilon) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::CPViolation, "alpha must be positive, got " + std::to_string(alpha));
  if (!(reynolds > 0.0) || !std::isfinite(reynolds))
    throw Error(ErrorKind::CPViolation, "reynolds must be positive, got " + std::to_string(reynolds));
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorKind::CPViolation, "epsilon must be nonnegative, got " + std::to_string(epsilon));
  if (!std::isfinite(v_out))
    throw Error(ErrorKind::CPViolation, "v_out must be finite");
  ModelParams p;
  p.alpha = alpha;
  p.reynolds = reynolds;
  p.v_out = v_out;
  p.epsilon = epsilon;
  p.kappa = alpha * v_out + 1.0 / reynolds;
  p.sigma = alpha * v_out + 2.0 / reynolds;
  if (!(p.kappa > 0.0))
    throw Error(ErrorKind::CPViolation,
                "alpha*v_out + 1/reynolds = " + std::to_string(p.kappa) + " is not positive");
  return p;
}

Mode make_mode(const ModelParams& params, cplx lambda, RVec xi) {
  Mode m;
  m.lambda = lambda;
  m.lambda_eps = params.epsilon + lambda;
  if (m.lambda_eps.imag() == 0.0 && m.lambda_eps.real() <= 0.0)
    throw Error(ErrorKind::BranchCut, "lambda + epsilon lies on the closed negative real axis");
  const double s = 1.0 / std::sqrt(params.reynolds);
  m.zeta.resize(xi.size());
  double z2 = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    m.zeta[k] = xi[k] * s;
    z2 += m.zeta[k] * m.zeta[k];
  }
  m.xi = std::move(xi);
  m.zeta_abs = std::sqrt(z2);
  m.omega = std::sqrt(m.lambda_eps + z2);
  return m;
}

const char* to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::TDO: return "TDO";
    case BoundaryCondition::NDO: return "NDO";
    case BoundaryCondition::FDO: return "FDO";
    case BoundaryCondition::Dirichlet: return "Dirichlet";
    case BoundaryCondition::Navier: return "Navier";
    case BoundaryCondition::Neumann: return "Neumann";
  }
  return "Unknown";
}

BoundaryCondition parse_boundary_condition(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "tdo") return BoundaryCondition::TDO;
  if (s == "ndo") return BoundaryCondition::NDO;
  if (s == "fdo") return BoundaryCondition::FDO;
  if (s == "dirichlet") return BoundaryCondition::Dirichlet;
  if (s == "navier") return BoundaryCondition::Navier;
  if (s == "neumann") return BoundaryCondition::Neumann;
  throw Error(ErrorKind::InvalidArgument, "unknown boundary condition '" + name + "'");
}

double data_norm(const ModeData& data) {
  double s = std::norm(data.h_w);
  for (const auto& v : data.h_v) s += std::norm(v);
  return std::sqrt(s);
}

double rel_diff(cplx a, cplx b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace stokes_outflow
