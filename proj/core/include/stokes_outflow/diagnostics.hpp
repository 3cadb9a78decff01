#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow {

struct FluidConstants {
  double rho = 1.0;
  double eta = 1.0;
};

FluidConstants make_fluid_constants(double rho, double eta);

enum class Quadrature { Trapezoid, Gregory };

/// Uniform node grid on [0, lx] x [0, ly] with nx x ny intervals.
struct BoxGrid {
  std::size_t nx = 128, ny = 128;
  double lx = 1.0, ly = 1.0;

  double hx() const { return lx / double(nx); }
  double hy() const { return ly / double(ny); }
  double x(std::size_t i) const { return hx() * double(i); }
  double y(std::size_t j) const { return hy() * double(j); }
  std::size_t nodes() const { return (nx + 1) * (ny + 1); }
  std::size_t at(std::size_t i, std::size_t j) const { return j * (nx + 1) + i; }
};

/// Nodal 2D velocity, pressure and body force.
struct BoxField {
  BoxGrid grid;
  RVec vx, vy, p, bx, by;
};

BoxField zero_box_field(const BoxGrid& grid);

/// Faces in the order x_min, x_max, y_min, y_max.
enum class BoxFace { XMin, XMax, YMin, YMax };
const char* to_string(BoxFace face);

struct BoundaryPartTerms {
  std::string name;
  /// Integral of v . S nu.
  double stress_work = 0.0;
  /// Integral of rho |v|^2 / 2 v . nu.
  double convective_flux = 0.0;
};

struct EnergyBudget {
  double volume_dissipation = 0.0;
  double body_work = 0.0;
  std::vector<BoundaryPartTerms> parts;
  double total_rate = 0.0;
};

struct DiagnosticsOptions {
  Quadrature quadrature = Quadrature::Gregory;
  /// 2 or 4.
  int stencil_order = 4;
  /// Relative bound on the discrete divergence.
  double divergence_tol = 1e-6;
};

/// Kinetic-energy rate split into volume and boundary terms. `part_of_face`
/// names the boundary part each face belongs to (faces sharing a name are
/// summed). Throws NonSolenoidal when max |div v| exceeds
/// divergence_tol * max(1, max |grad v|).
EnergyBudget energy_rate(const BoxField& field, const FluidConstants& c,
                         const std::array<std::string, 4>& part_of_face, const DiagnosticsOptions& opt = {});

/// Integral of rho |v|^2 / 2.
double kinetic_energy(const BoxField& field, const FluidConstants& c, Quadrature q = Quadrature::Gregory);

/// Max discrete divergence.
double max_divergence(const BoxField& field, int stencil_order = 4);

/// Central difference of the kinetic energy minus total_rate.
double budget_defect(const EnergyBudget& budget, double e_minus, double e_plus, double dt);

/// One row per term: term, part, value.
std::string energy_budget_csv(const EnergyBudget& budget);

enum class OutflowVariant { DBC1, DBC2, PrescribedOutflow, DBC3, DBC4, DBC5, DBC6, DBC7 };
const char* to_string(OutflowVariant v);
OutflowVariant parse_outflow_variant(const std::string& name);

/// Pointwise data on the outflow boundary with its fixed surface measure.
struct OutflowTracePoint {
  double weight = 0.0;
  Eigen::VectorXd v, dt_v, v_out, s_nu;
  /// grad_v(i, j) = d v_i / d x_j.
  Eigen::MatrixXd grad_v;
};

struct OutflowTrace {
  Eigen::VectorXd nu;
  double rho = 1.0;
  double alpha = 1.0;
  std::vector<OutflowTracePoint> points;
};

/// Surface integral of the Euclidean norm of the selected condition's
/// residual. The nonlinear variants use (v . grad) v, the linearized ones
/// (v_out . grad) v; DBC4 uses V = v_out . nu. Throws MissingTrace when a
/// field the variant reads is empty.
double outflow_dissipation_residual(const OutflowTrace& trace, OutflowVariant variant);

/// Integral of v . rho (dt v + (v . grad) v), the fixed-measure energy rate of
/// the exiting layer.
double outflow_energy_flux(const OutflowTrace& trace);

/// Traces of a nodal field on the four faces, each ordered by increasing
/// coordinate along the face.
struct FaceTraces {
  std::array<RVec, 4> values;
};

/// <phi, F(psi, eta)> = sum over faces of the integral of phi eta minus the
/// volume integral of phi psi.
double compat_functional(const BoxGrid& grid, const RVec& phi, const RVec& psi, const FaceTraces& eta,
                         Quadrature q = Quadrature::Trapezoid);

/// <phi, F(div u, u . nu)> - integral of grad phi . u, with div u and grad phi from
/// centered second-order differences.
double compat_identity_defect(const BoxGrid& grid, const RVec& ux, const RVec& uy, const RVec& phi,
                              Quadrature q = Quadrature::Trapezoid);

/// Face traces of a nodal field.
FaceTraces face_traces(const BoxGrid& grid, const RVec& f);

/// Quadrature weights for n + 1 equispaced nodes with spacing h.
RVec quadrature_weights(std::size_t n, double h, Quadrature q);

}  // namespace stokes_outflow
