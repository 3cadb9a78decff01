#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow {

enum class Parity { Even, Odd };

/// Row-major complex array of arbitrary rank.
struct NdArray {
  std::vector<std::size_t> shape;
  CVec data;

  NdArray() = default;
  explicit NdArray(std::vector<std::size_t> s);
  std::size_t size() const;
};

/// Reflects along `axis` about index 0. An input of length M + 1 on [0, L]
/// becomes a periodic array of length 2M on [0, 2L) with g[k] = f[k] for
/// k <= M and g[2M - k] = +-f[k]. Odd parity requires f[0] and f[M] to
/// vanish relative to max|f| (1e-12); those entries are copied unchanged so
/// that restriction is bit-exact.
NdArray extend(const NdArray& f, std::size_t axis, Parity parity);

/// Inverse of extend: keeps indices 0..M along `axis`.
NdArray restrict_half(const NdArray& g, std::size_t axis);

/// Max |g[k] -+ g[2M-k]| over the extended array, relative to max|g|.
double parity_defect(const NdArray& g, std::size_t axis, Parity parity);

/// Wedge y, z >= 0 in n = 3 with the wall at y = 0 (normal -e_y) and the
/// inflow/outflow face at z = 0 (normal -e_z). x is periodic on [0, lx);
/// y is sampled at my + 1 points on [0, ly] with mirror symmetry at both
/// ends; z is sampled at mz + 1 points on [0, lz].
struct WedgeGrid {
  std::size_t nx = 16;
  double lx = 2.0 * 3.141592653589793;
  std::size_t my = 16;
  double ly = 3.141592653589793;
  std::size_t mz = 16;
  double lz = 4.0;

  double x(std::size_t i) const { return lx * double(i) / double(nx); }
  double y(std::size_t j) const { return ly * double(j) / double(my); }
  double z(std::size_t k) const { return lz * double(k) / double(mz); }
};

/// Data on the z = 0 face, each of shape (nx, my + 1): (u, v, w) components.
struct FaceData {
  NdArray u, v, w;
};

/// Data on the wall y = 0, each of shape (nx, mz + 1).
struct WallData {
  NdArray u, v, w;
};

FaceData zero_face_data(const WedgeGrid& grid);
WallData zero_wall_data(const WedgeGrid& grid);

/// Fields of shape (mz + 1, nx, my + 1), indexed [iz][ix][iy].
struct WedgeField {
  WedgeGrid grid;
  NdArray u, v, w, p;
  /// Max residual of the homogeneous perfect-slip wall rows at y = 0, relative to the data.
  double wall_residual = 0.0;
  /// Max parity defect of the reflected half-space solution before restriction.
  double parity_error = 0.0;
};

struct EdgeBundle;

/// Inflow face + Navier wall. Wall data must already be reduced to zero;
/// the inflow datum is reflected (u, w even and v odd in y), solved with a
/// Dirichlet condition in the half-space z > 0, and restricted. When `edge`
/// is given, the raw inputs' IF/W edge conditions are checked first.
WedgeField solve_wedge_inflow(const ModelParams& params, const FaceData& inflow_data, const WallData& wall_data,
                              const WedgeGrid& grid, cplx lambda, const EdgeBundle* edge = nullptr,
                              double edge_tol = 1e-8);

/// Dynamic outflow face + Navier wall, reduced data (wall data zero):
/// h_u, h_w are extended evenly and h_v oddly in y.
WedgeField solve_wedge_outflow(const ModelParams& params, BoundaryCondition bc, const FaceData& outflow_data,
                               const WedgeGrid& grid, cplx lambda, const EdgeBundle* edge = nullptr,
                               double edge_tol = 1e-8);

/// Removes a wall normal-stress datum h_w: the odd z-extension of h_w is
/// fed to a Neumann heat problem in y > 0. Returns w (u = v = p = 0) with
/// [w]_{z=0} = 0 and -(1/Re) dw/dy = h_w on the wall; wall_residual reports
/// the latter row.
WedgeField reduce_wall_normal_stress(const ModelParams& params, const NdArray& h_wall_w, const WedgeGrid& grid,
                                     cplx lambda);

/// CSV with columns x, y, z and re/im pairs of u, v, w, p.
std::string wedge_field_csv(const WedgeField& field);

enum class EdgeKind { IF_W, TDO_W, NDO_W, FDO_W };

const char* to_string(EdgeKind kind);
EdgeKind parse_edge_kind(const std::string& name);

/// Edge traces, each sampled at the same edge points. Names follow
/// <derivative>_<quantity>_<component>: "nw" is the wall-normal component or
/// derivative, "ng" the face-normal one, "edge" the tangential projection.
/// Recognized traces: u_in_edge, u_in_nw, u_in_ng, dnw_u_in_edge, dnw_u_in_ng,
/// h_wall_edge, h_wall_nw, h_wall_ng, grad_e_h_wall_nw, dng_h_wall_nw,
/// dt_h_wall_nw, h_edge, h_nw, h_ng, dnw_h_edge, dnw_h_ng, xi_edge, xi_nw,
/// dnw_xi_edge, eta, dnw_eta.
struct EdgeBundle {
  std::map<std::string, CVec> traces;
  double sigma = 0.0;
  double v_out = 0.0;
  double alpha = 1.0;
  double reynolds = 1.0;

  const CVec& at(const std::string& name) const;
};

struct EdgeEquationResidual {
  std::string name;
  double residual;
};

struct EdgeCompatReport {
  EdgeKind kind;
  std::vector<EdgeEquationResidual> equations;
  double tolerance = 0.0;
  bool satisfied = true;
};

/// Names of the traces each edge condition reads.
std::vector<std::string> required_traces(EdgeKind kind);

/// Per-equation max residual on the edge; satisfied when each is below tol * scale,
/// where scale is max(1, max |trace|).
EdgeCompatReport check_edge_compat(EdgeKind kind, const EdgeBundle& bundle, double tol = 1e-8);

/// Fills the right-hand traces (h_wall_edge, h_wall_nw, h_wall_ng and, for the
/// dynamic conditions, h_nw) so that every equation of `kind` holds exactly.
void make_compatible(EdgeKind kind, EdgeBundle& bundle);

}  // namespace stokes_outflow
