#include "stokes_outflow/wedge.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fft.hpp"
#include "stokes_outflow/csv.hpp"
#include "stokes_outflow/parallel.hpp"
#include "stokes_outflow/resolvent.hpp"
#include "stokes_outflow/scalar_kernels.hpp"

namespace stokes_outflow {

NdArray::NdArray(std::vector<std::size_t> s) : shape(std::move(s)), data(size(), 0.0) {}

std::size_t NdArray::size() const {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

namespace {

struct AxisSplit {
  std::size_t outer, len, inner;
};

AxisSplit split(const std::vector<std::size_t>& shape, std::size_t axis) {
  if (axis >= shape.size()) throw Error(ErrorKind::InvalidArgument, "axis out of range");
  AxisSplit s{1, shape[axis], 1};
  for (std::size_t d = 0; d < axis; ++d) s.outer *= shape[d];
  for (std::size_t d = axis + 1; d < shape.size(); ++d) s.inner *= shape[d];
  return s;
}

double max_abs(const CVec& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

NdArray extend(const NdArray& f, std::size_t axis, Parity parity) {
  const AxisSplit s = split(f.shape, axis);
  if (s.len < 2) throw Error(ErrorKind::InvalidArgument, "extend needs at least two samples along the axis");
  const std::size_t m = s.len - 1;
  if (parity == Parity::Odd) {
    const double scale = max_abs(f.data);
    double plane = 0.0;
    for (std::size_t o = 0; o < s.outer; ++o)
      for (std::size_t i = 0; i < s.inner; ++i) {
        plane = std::max(plane, std::abs(f.data[(o * s.len + 0) * s.inner + i]));
        plane = std::max(plane, std::abs(f.data[(o * s.len + m) * s.inner + i]));
      }
    if (plane > 1e-12 * scale) {
      std::ostringstream os;
      os << "odd extension of data with reflection-plane trace " << plane << " (max " << scale << ")";
      throw Error(ErrorKind::ParityIncompatible, os.str());
    }
  }
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  std::vector<std::size_t> shape = f.shape;
  shape[axis] = 2 * m;
  NdArray g(shape);
  for (std::size_t o = 0; o < s.outer; ++o)
    for (std::size_t k = 0; k < 2 * m; ++k) {
      const bool mirrored = k > m;
      const std::size_t src = mirrored ? 2 * m - k : k;
      for (std::size_t i = 0; i < s.inner; ++i) {
        const cplx v = f.data[(o * s.len + src) * s.inner + i];
        g.data[(o * 2 * m + k) * s.inner + i] = mirrored ? sign * v : v;
      }
    }
  return g;
}

NdArray restrict_half(const NdArray& g, std::size_t axis) {
  const AxisSplit s = split(g.shape, axis);
  if (s.len < 2 || s.len % 2 != 0) throw Error(ErrorKind::InvalidArgument, "restrict_half needs an even length");
  const std::size_t m = s.len / 2;
  std::vector<std::size_t> shape = g.shape;
  shape[axis] = m + 1;
  NdArray f(shape);
  for (std::size_t o = 0; o < s.outer; ++o)
    for (std::size_t k = 0; k <= m; ++k)
      for (std::size_t i = 0; i < s.inner; ++i)
        f.data[(o * (m + 1) + k) * s.inner + i] = g.data[(o * s.len + k) * s.inner + i];
  return f;
}

double parity_defect(const NdArray& g, std::size_t axis, Parity parity) {
  const AxisSplit s = split(g.shape, axis);
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  const double scale = max_abs(g.data);
  if (scale == 0.0) return 0.0;
  double d = 0.0;
  for (std::size_t o = 0; o < s.outer; ++o)
    for (std::size_t k = 0; k < s.len; ++k) {
      const std::size_t mk = (s.len - k) % s.len;
      for (std::size_t i = 0; i < s.inner; ++i)
        d = std::max(d, std::abs(g.data[(o * s.len + k) * s.inner + i] -
                                 sign * g.data[(o * s.len + mk) * s.inner + i]));
    }
  return d / scale;
}

FaceData zero_face_data(const WedgeGrid& grid) {
  const std::vector<std::size_t> s{grid.nx, grid.my + 1};
  return {NdArray(s), NdArray(s), NdArray(s)};
}

WallData zero_wall_data(const WedgeGrid& grid) {
  const std::vector<std::size_t> s{grid.nx, grid.mz + 1};
  return {NdArray(s), NdArray(s), NdArray(s)};
}

namespace {

void check_face_shape(const NdArray& a, const WedgeGrid& g, const char* what) {
  if (a.shape != std::vector<std::size_t>{g.nx, g.my + 1})
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must have shape (nx, my + 1)");
}

/// Zeroes the reflection-plane entries of odd data after extend() accepted them.
NdArray odd_extension(NdArray a) {
  NdArray g = extend(a, 1, Parity::Odd);
  const std::size_t n2 = g.shape[1], m = n2 / 2;
  for (std::size_t o = 0; o < g.shape[0]; ++o) {
    g.data[o * n2 + 0] = 0.0;
    g.data[o * n2 + m] = 0.0;
  }
  return g;
}

void run_edge_check(EdgeKind kind, const EdgeBundle* edge, double tol) {
  if (!edge) return;
  const EdgeCompatReport rep = check_edge_compat(kind, *edge, tol);
  if (!rep.satisfied) {
    std::ostringstream os;
    os << to_string(kind) << " edge conditions violated:";
    for (const auto& e : rep.equations) os << ' ' << e.name << '=' << e.residual;
    throw Error(ErrorKind::EdgeCompatibilityViolated, os.str());
  }
}

/// Reflects face data, solves the half-space problem in z > 0 and restricts.
WedgeField reflected_solve(const ModelParams& params, BoundaryCondition bc, const FaceData& data,
                           const WedgeGrid& grid, cplx lambda) {
  check_face_shape(data.u, grid, "face u");
  check_face_shape(data.v, grid, "face v");
  check_face_shape(data.w, grid, "face w");
  const NdArray eu = extend(data.u, 1, Parity::Even);
  const NdArray ev = odd_extension(data.v);
  const NdArray ew = extend(data.w, 1, Parity::Even);

  BoundaryField field;
  field.grid.n = {grid.nx, 2 * grid.my};
  field.grid.length = {grid.lx, 2.0 * grid.ly};
  field.h_v = {eu.data, ev.data};
  field.h_w = ew.data;
  const FieldSpectrum spec = solve_spectrum(params, bc, field, lambda);

  const std::size_t nz = grid.mz + 1, ny = grid.my + 1, ny2 = 2 * grid.my;
  WedgeField out;
  out.grid = grid;
  const std::vector<std::size_t> shape{nz, grid.nx, ny};
  out.u = NdArray(shape);
  out.v = NdArray(shape);
  out.w = NdArray(shape);
  out.p = NdArray(shape);

  double scale = std::max({max_abs(data.u.data), max_abs(data.v.data), max_abs(data.w.data)});
  if (scale == 0.0) scale = 1.0;
  const double ire = 1.0 / params.reynolds;
  std::vector<double> parity(nz, 0.0), wall(nz, 0.0);

  parallel_for(nz, [&](std::size_t iz) {
    const double z = grid.z(iz);
    auto synth = [&](const ModeExtractor& ex) {
      NdArray a({grid.nx, ny2});
      a.data = synthesize(spec, z, ex);
      return a;
    };
    const NdArray u = synth([](const ProfileValue& v, const RVec&) { return v.v_hat[0]; });
    const NdArray v = synth([](const ProfileValue& v, const RVec&) { return v.v_hat[1]; });
    const NdArray w = synth([](const ProfileValue& v, const RVec&) { return v.w_hat; });
    const NdArray p = synth([](const ProfileValue& v, const RVec&) { return v.p_hat; });
    parity[iz] = std::max({parity_defect(u, 1, Parity::Even), parity_defect(v, 1, Parity::Odd),
                           parity_defect(w, 1, Parity::Even), parity_defect(p, 1, Parity::Even)});
    // Perfect-slip wall rows at y = 0 from spectral derivatives.
    const NdArray r1 = synth([ire](const ProfileValue& v, const RVec& xi) {
      return -ire * (cplx(0.0, xi[1]) * v.v_hat[0] + cplx(0.0, xi[0]) * v.v_hat[1]);
    });
    const NdArray r3 = synth([ire](const ProfileValue& v, const RVec& xi) {
      return -ire * (cplx(0.0, xi[1]) * v.w_hat + v.dy_v_hat[1]);
    });
    double res = 0.0;
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const std::size_t at = ix * ny2;
      res = std::max({res, std::abs(r1.data[at]), std::abs(v.data[at]), std::abs(r3.data[at])});
    }
    wall[iz] = res / scale;
    for (std::size_t ix = 0; ix < grid.nx; ++ix)
      for (std::size_t iy = 0; iy < ny; ++iy) {
        const std::size_t dst = (iz * grid.nx + ix) * ny + iy;
        const std::size_t src = ix * ny2 + iy;
        out.u.data[dst] = u.data[src];
        out.v.data[dst] = v.data[src];
        out.w.data[dst] = w.data[src];
        out.p.data[dst] = p.data[src];
      }
  });
  out.parity_error = *std::max_element(parity.begin(), parity.end());
  out.wall_residual = *std::max_element(wall.begin(), wall.end());
  return out;
}

}  // namespace

WedgeField solve_wedge_inflow(const ModelParams& params, const FaceData& inflow_data, const WallData& wall_data,
                              const WedgeGrid& grid, cplx lambda, const EdgeBundle* edge, double edge_tol) {
  const double wall = std::max({max_abs(wall_data.u.data), max_abs(wall_data.v.data), max_abs(wall_data.w.data)});
  if (wall != 0.0)
    throw Error(ErrorKind::InvalidArgument,
                "wall data must be reduced to zero before the reflected inflow solve");
  run_edge_check(EdgeKind::IF_W, edge, edge_tol);
  return reflected_solve(params, BoundaryCondition::Dirichlet, inflow_data, grid, lambda);
}

WedgeField solve_wedge_outflow(const ModelParams& params, BoundaryCondition bc, const FaceData& outflow_data,
                               const WedgeGrid& grid, cplx lambda, const EdgeBundle* edge, double edge_tol) {
  EdgeKind kind;
  switch (bc) {
    case BoundaryCondition::TDO: kind = EdgeKind::TDO_W; break;
    case BoundaryCondition::NDO: kind = EdgeKind::NDO_W; break;
    case BoundaryCondition::FDO: kind = EdgeKind::FDO_W; break;
    default:
      throw Error(ErrorKind::InvalidArgument, "solve_wedge_outflow expects TDO, NDO or FDO");
  }
  run_edge_check(kind, edge, edge_tol);
  return reflected_solve(params, bc, outflow_data, grid, lambda);
}

WedgeField reduce_wall_normal_stress(const ModelParams& params, const NdArray& h_wall_w, const WedgeGrid& grid,
                                     cplx lambda) {
  if (h_wall_w.shape != std::vector<std::size_t>{grid.nx, grid.mz + 1})
    throw Error(ErrorKind::InvalidArgument, "wall datum must have shape (nx, mz + 1)");
  const NdArray ext = odd_extension(h_wall_w);
  const std::vector<std::size_t> n{grid.nx, 2 * grid.mz};
  const RVec length{grid.lx, 2.0 * grid.lz};
  CVec hat = ext.data;
  detail::fft_nd(n, hat, true);

  const double mu = 1.0 / params.reynolds;
  TangentialGrid tg{n, length};
  std::vector<ScalarModeProfile> prof(hat.size());
  for (std::size_t flat = 0; flat < hat.size(); ++flat) {
    const auto idx = tg.unflatten(flat);
    const RVec xi{tg.wavenumber(0, idx[0]), tg.wavenumber(1, idx[1])};
    // Decaying heat profile with Neumann row -mu w'(0) = h.
    ScalarModeProfile s = heat_dirichlet_mode(mu, params.epsilon, lambda, xi, 1.0);
    s.amplitude = hat[flat] / (mu * s.decay_rate);
    prof[flat] = s;
  }

  const std::size_t nz = grid.mz + 1, ny = grid.my + 1, nz2 = 2 * grid.mz;
  WedgeField out;
  out.grid = grid;
  const std::vector<std::size_t> shape{nz, grid.nx, ny};
  out.u = NdArray(shape);
  out.v = NdArray(shape);
  out.w = NdArray(shape);
  out.p = NdArray(shape);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double y = grid.y(iy);
    CVec c(hat.size());
    for (std::size_t f = 0; f < c.size(); ++f) c[f] = prof[f].value(y);
    detail::fft_nd(n, c, false);
    for (std::size_t ix = 0; ix < grid.nx; ++ix)
      for (std::size_t iz = 0; iz < nz; ++iz) out.w.data[(iz * grid.nx + ix) * ny + iy] = c[ix * nz2 + iz];
  }
  CVec row(hat.size());
  for (std::size_t f = 0; f < row.size(); ++f) row[f] = -mu * prof[f].dy(0.0);
  detail::fft_nd(n, row, false);
  double res = 0.0;
  for (std::size_t ix = 0; ix < grid.nx; ++ix)
    for (std::size_t iz = 0; iz < nz; ++iz)
      res = std::max(res, std::abs(row[ix * nz2 + iz] - h_wall_w.data[ix * nz + iz]));
  const double scale = std::max(1.0, max_abs(h_wall_w.data));
  out.wall_residual = res / scale;
  NdArray wz({grid.nx, nz2});
  wz.data = ext.data;
  out.parity_error = parity_defect(wz, 1, Parity::Odd);
  return out;
}

std::string wedge_field_csv(const WedgeField& field) {
  std::ostringstream os;
  os << "x,y,z,u_re,u_im,v_re,v_im,w_re,w_im,p_re,p_im\n";
  const WedgeGrid& g = field.grid;
  const std::size_t ny = g.my + 1;
  for (std::size_t iz = 0; iz <= g.mz; ++iz)
    for (std::size_t ix = 0; ix < g.nx; ++ix)
      for (std::size_t iy = 0; iy < ny; ++iy) {
        const std::size_t at = (iz * g.nx + ix) * ny + iy;
        os << fmt_double(g.x(ix)) << ',' << fmt_double(g.y(iy)) << ',' << fmt_double(g.z(iz));
        for (const NdArray* a : {&field.u, &field.v, &field.w, &field.p})
          os << ',' << fmt_double(a->data[at].real()) << ',' << fmt_double(a->data[at].imag());
        os << '\n';
      }
  return os.str();
}

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::IF_W: return "IF/W";
    case EdgeKind::TDO_W: return "TDO/W";
    case EdgeKind::NDO_W: return "NDO/W";
    case EdgeKind::FDO_W: return "FDO/W";
  }
  return "Unknown";
}

EdgeKind parse_edge_kind(const std::string& name) {
  std::string s;
  for (char c : name)
    if (std::isalnum(static_cast<unsigned char>(c))) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "IFW") return EdgeKind::IF_W;
  if (s == "TDOW") return EdgeKind::TDO_W;
  if (s == "NDOW") return EdgeKind::NDO_W;
  if (s == "FDOW") return EdgeKind::FDO_W;
  throw Error(ErrorKind::InvalidArgument, "unknown edge condition '" + name + "'");
}

const CVec& EdgeBundle::at(const std::string& name) const {
  const auto it = traces.find(name);
  if (it == traces.end()) throw Error(ErrorKind::MissingTrace, "edge trace '" + name + "' not supplied");
  return it->second;
}

std::vector<std::string> required_traces(EdgeKind kind) {
  const std::vector<std::string> wall = {"h_wall_edge", "h_wall_nw", "h_wall_ng", "grad_e_h_wall_nw",
                                         "dng_h_wall_nw"};
  std::vector<std::string> r = wall;
  auto add = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) r.emplace_back(n);
  };
  switch (kind) {
    case EdgeKind::IF_W:
      add({"u_in_edge", "u_in_nw", "u_in_ng", "dnw_u_in_edge", "dnw_u_in_ng"});
      break;
    case EdgeKind::TDO_W:
      add({"xi_edge", "xi_nw", "dnw_xi_edge", "h_ng", "dnw_h_ng", "h_nw", "dt_h_wall_nw"});
      break;
    case EdgeKind::NDO_W:
      add({"h_edge", "dnw_h_edge", "h_nw", "eta", "dnw_eta"});
      break;
    case EdgeKind::FDO_W:
      add({"xi_edge", "xi_nw", "dnw_xi_edge", "eta", "dnw_eta", "h_nw", "dt_h_wall_nw"});
      break;
  }
  return r;
}

namespace {

/// Left-hand sides (without the right-hand trace) of each edge equation,
/// paired with the name of the right-hand trace.
struct EdgeEquation {
  std::string name;
  std::string rhs;
  CVec lhs;
};

std::vector<EdgeEquation> edge_equations(EdgeKind kind, const EdgeBundle& b) {
  for (const auto& n : required_traces(kind)) (void)b.at(n);
  const std::size_t n = b.at("h_wall_edge").size();
  for (const auto& name : required_traces(kind))
    if (b.at(name).size() != n)
      throw Error(ErrorKind::InvalidArgument, "edge trace '" + name + "' has a different length");
  const double s = b.sigma, ire = 1.0 / b.reynolds;
  auto lin = [&](std::initializer_list<std::pair<cplx, const char*>> terms) {
    CVec out(n, 0.0);
    for (const auto& [c, name] : terms) {
      const CVec& t = b.at(name);
      for (std::size_t i = 0; i < n; ++i) out[i] += c * t[i];
    }
    return out;
  };
  std::vector<EdgeEquation> eq;
  const char* tan = kind == EdgeKind::IF_W ? "u_in_edge" : kind == EdgeKind::NDO_W ? "h_edge" : "xi_edge";
  const char* dtan = kind == EdgeKind::IF_W ? "dnw_u_in_edge" : kind == EdgeKind::NDO_W ? "dnw_h_edge" : "dnw_xi_edge";
  const char* nw = kind == EdgeKind::IF_W ? "u_in_nw" : kind == EdgeKind::NDO_W ? "h_nw" : "xi_nw";
  eq.push_back({"E1", "h_wall_edge", lin({{s, tan}, {ire, dtan}, {ire, "grad_e_h_wall_nw"}})});
  eq.push_back({"E2", "h_wall_nw", lin({{1.0, nw}})});
  switch (kind) {
    case EdgeKind::IF_W:
      eq.push_back({"E3", "h_wall_ng", lin({{s, "u_in_ng"}, {ire, "dnw_u_in_ng"}, {ire, "dng_h_wall_nw"}})});
      break;
    case EdgeKind::TDO_W:
      eq.push_back({"E3", "h_wall_ng", lin({{s, "h_ng"}, {ire, "dnw_h_ng"}, {ire, "dng_h_wall_nw"}})});
      eq.push_back({"E4", "h_nw",
                    lin({{b.alpha, "dt_h_wall_nw"}, {b.alpha * b.v_out, "dng_h_wall_nw"}, {1.0, "h_wall_ng"},
                         {-s, "h_ng"}})});
      break;
    case EdgeKind::NDO_W:
      eq.push_back({"E3", "h_wall_ng", lin({{s, "eta"}, {ire, "dnw_eta"}, {ire, "dng_h_wall_nw"}})});
      break;
    case EdgeKind::FDO_W:
      eq.push_back({"E3", "h_wall_ng", lin({{s, "eta"}, {ire, "dnw_eta"}, {ire, "dng_h_wall_nw"}})});
      eq.push_back({"E4", "h_nw",
                    lin({{b.alpha, "dt_h_wall_nw"}, {b.alpha * b.v_out, "dng_h_wall_nw"}, {1.0, "h_wall_ng"},
                         {-s, "eta"}})});
      break;
  }
  return eq;
}

}  // namespace

EdgeCompatReport check_edge_compat(EdgeKind kind, const EdgeBundle& bundle, double tol) {
  const auto eqs = edge_equations(kind, bundle);
  double scale = 1.0;
  for (const auto& name : required_traces(kind)) scale = std::max(scale, max_abs(bundle.at(name)));
  EdgeCompatReport rep;
  rep.kind = kind;
  rep.tolerance = tol * scale;
  for (const auto& e : eqs) {
    const CVec& rhs = bundle.at(e.rhs);
    double r = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i) r = std::max(r, std::abs(e.lhs[i] - rhs[i]));
    rep.equations.push_back({e.name, r});
    if (!(r < rep.tolerance)) rep.satisfied = false;
  }
  return rep;
}

void make_compatible(EdgeKind kind, EdgeBundle& bundle) {
  // E1-E3 only read left-side traces; E4 reads h_wall_ng, so fill in order.
  const std::size_t n = bundle.at("h_wall_edge").size();
  for (int pass = 0; pass < 2; ++pass) {
    const auto eqs = edge_equations(kind, bundle);
    for (const auto& e : eqs) {
      if (pass == 0 && e.name == "E4") continue;
      if (pass == 1 && e.name != "E4") continue;
      CVec& rhs = bundle.traces[e.rhs];
      rhs.assign(e.lhs.begin(), e.lhs.end());
      rhs.resize(n);
    }
  }
}

}  // namespace stokes_outflow
