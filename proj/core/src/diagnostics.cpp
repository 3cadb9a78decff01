#include "stokes_outflow/diagnostics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "stokes_outflow/csv.hpp"

namespace stokes_outflow {

FluidConstants make_fluid_constants(double rho, double eta) {
  if (!(rho > 0.0) || !(eta > 0.0))
    throw Error(ErrorKind::CPViolation, "density and viscosity must be positive");
  return {rho, eta};
}

BoxField zero_box_field(const BoxGrid& grid) {
  const RVec z(grid.nodes(), 0.0);
  return {grid, z, z, z, z, z};
}

const char* to_string(BoxFace face) {
  switch (face) {
    case BoxFace::XMin: return "x_min";
    case BoxFace::XMax: return "x_max";
    case BoxFace::YMin: return "y_min";
    case BoxFace::YMax: return "y_max";
  }
  return "unknown";
}

RVec quadrature_weights(std::size_t n, double h, Quadrature q) {
  RVec w(n + 1, h);
  if (q == Quadrature::Gregory && n >= 6) {
    static constexpr double end[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
    for (std::size_t k = 0; k < 3; ++k) {
      w[k] = end[k] * h;
      w[n - k] = end[k] * h;
    }
  } else {
    w[0] = w[n] = 0.5 * h;
  }
  return w;
}

namespace {

/// Derivative along a strided line of n + 1 samples.
void line_derivative(const double* f, std::size_t stride, std::size_t n, double h, int order, double* out,
                     std::size_t out_stride) {
  auto F = [&](std::size_t i) { return f[i * stride]; };
  auto O = [&](std::size_t i) -> double& { return out[i * out_stride]; };
  if (order == 4 && n >= 4) {
    const double s = 1.0 / (12.0 * h);
    O(0) = s * (-25.0 * F(0) + 48.0 * F(1) - 36.0 * F(2) + 16.0 * F(3) - 3.0 * F(4));
    O(1) = s * (-3.0 * F(0) - 10.0 * F(1) + 18.0 * F(2) - 6.0 * F(3) + F(4));
    for (std::size_t i = 2; i + 2 <= n; ++i) O(i) = s * (F(i - 2) - 8.0 * F(i - 1) + 8.0 * F(i + 1) - F(i + 2));
    O(n - 1) = -s * (-3.0 * F(n) - 10.0 * F(n - 1) + 18.0 * F(n - 2) - 6.0 * F(n - 3) + F(n - 4));
    O(n) = -s * (-25.0 * F(n) + 48.0 * F(n - 1) - 36.0 * F(n - 2) + 16.0 * F(n - 3) - 3.0 * F(n - 4));
    return;
  }
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "grid too small for differencing");
  const double s = 1.0 / (2.0 * h);
  O(0) = s * (-3.0 * F(0) + 4.0 * F(1) - F(2));
  for (std::size_t i = 1; i < n; ++i) O(i) = s * (F(i + 1) - F(i - 1));
  O(n) = s * (3.0 * F(n) - 4.0 * F(n - 1) + F(n - 2));
}

RVec ddx(const BoxGrid& g, const RVec& f, int order) {
  RVec d(f.size());
  for (std::size_t j = 0; j <= g.ny; ++j)
    line_derivative(&f[g.at(0, j)], 1, g.nx, g.hx(), order, &d[g.at(0, j)], 1);
  return d;
}

RVec ddy(const BoxGrid& g, const RVec& f, int order) {
  RVec d(f.size());
  for (std::size_t i = 0; i <= g.nx; ++i)
    line_derivative(&f[g.at(i, 0)], g.nx + 1, g.ny, g.hy(), order, &d[g.at(i, 0)], g.nx + 1);
  return d;
}

double volume_integral(const BoxGrid& g, const RVec& f, Quadrature q) {
  const RVec wx = quadrature_weights(g.nx, g.hx(), q), wy = quadrature_weights(g.ny, g.hy(), q);
  double s = 0.0;
  for (std::size_t j = 0; j <= g.ny; ++j) {
    double row = 0.0;
    for (std::size_t i = 0; i <= g.nx; ++i) row += wx[i] * f[g.at(i, j)];
    s += wy[j] * row;
  }
  return s;
}

/// Node indices of a face, ordered along the face, with its spacing and outward normal.
struct FaceLine {
  std::vector<std::size_t> nodes;
  double h;
  double nx, ny;
};

FaceLine face_line(const BoxGrid& g, BoxFace face) {
  FaceLine l;
  switch (face) {
    case BoxFace::XMin:
    case BoxFace::XMax: {
      const std::size_t i = face == BoxFace::XMin ? 0 : g.nx;
      for (std::size_t j = 0; j <= g.ny; ++j) l.nodes.push_back(g.at(i, j));
      l.h = g.hy();
      l.nx = face == BoxFace::XMin ? -1.0 : 1.0;
      l.ny = 0.0;
      break;
    }
    case BoxFace::YMin:
    case BoxFace::YMax: {
      const std::size_t j = face == BoxFace::YMin ? 0 : g.ny;
      for (std::size_t i = 0; i <= g.nx; ++i) l.nodes.push_back(g.at(i, j));
      l.h = g.hx();
      l.nx = 0.0;
      l.ny = face == BoxFace::YMin ? -1.0 : 1.0;
      break;
    }
  }
  return l;
}

constexpr std::array<BoxFace, 4> kFaces = {BoxFace::XMin, BoxFace::XMax, BoxFace::YMin, BoxFace::YMax};

void check_field(const BoxField& f) {
  const std::size_t n = f.grid.nodes();
  for (const RVec* a : {&f.vx, &f.vy, &f.p, &f.bx, &f.by})
    if (a->size() != n) throw Error(ErrorKind::InvalidArgument, "box field arrays must have (nx+1)(ny+1) nodes");
}

}  // namespace

double max_divergence(const BoxField& field, int stencil_order) {
  check_field(field);
  const RVec a = ddx(field.grid, field.vx, stencil_order), b = ddy(field.grid, field.vy, stencil_order);
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] + b[k]));
  return m;
}

double kinetic_energy(const BoxField& field, const FluidConstants& c, Quadrature q) {
  check_field(field);
  RVec e(field.grid.nodes());
  for (std::size_t k = 0; k < e.size(); ++k)
    e[k] = 0.5 * c.rho * (field.vx[k] * field.vx[k] + field.vy[k] * field.vy[k]);
  return volume_integral(field.grid, e, q);
}

EnergyBudget energy_rate(const BoxField& field, const FluidConstants& c,
                         const std::array<std::string, 4>& part_of_face, const DiagnosticsOptions& opt) {
  check_field(field);
  const BoxGrid& g = field.grid;
  const int ord = opt.stencil_order;
  const RVec ux = ddx(g, field.vx, ord), uy = ddy(g, field.vx, ord);
  const RVec vx = ddx(g, field.vy, ord), vy = ddy(g, field.vy, ord);

  double div = 0.0, grad = 0.0;
  for (std::size_t k = 0; k < ux.size(); ++k) {
    div = std::max(div, std::abs(ux[k] + vy[k]));
    grad = std::max({grad, std::abs(ux[k]), std::abs(uy[k]), std::abs(vx[k]), std::abs(vy[k])});
  }
  if (div > opt.divergence_tol * std::max(1.0, grad)) {
    std::ostringstream os;
    os << "max |div v| = " << div << " exceeds " << opt.divergence_tol << " * max(1, |grad v|)";
    throw Error(ErrorKind::NonSolenoidal, os.str());
  }

  RVec diss(g.nodes()), body(g.nodes());
  for (std::size_t k = 0; k < diss.size(); ++k) {
    // D : grad v with D symmetric.
    const double dxy = 0.5 * (uy[k] + vx[k]);
    const double dd = ux[k] * ux[k] + vy[k] * vy[k] + 2.0 * dxy * dxy;
    diss[k] = -2.0 * c.eta * dd;
    body[k] = c.rho * (field.bx[k] * field.vx[k] + field.by[k] * field.vy[k]);
  }
  EnergyBudget b;
  b.volume_dissipation = volume_integral(g, diss, opt.quadrature);
  b.body_work = volume_integral(g, body, opt.quadrature);
  b.total_rate = b.volume_dissipation + b.body_work;

  for (std::size_t f = 0; f < kFaces.size(); ++f) {
    const FaceLine l = face_line(g, kFaces[f]);
    const RVec w = quadrature_weights(l.nodes.size() - 1, l.h, opt.quadrature);
    double stress = 0.0, conv = 0.0;
    for (std::size_t m = 0; m < l.nodes.size(); ++m) {
      const std::size_t k = l.nodes[m];
      const double sxx = 2.0 * c.eta * ux[k] - field.p[k];
      const double syy = 2.0 * c.eta * vy[k] - field.p[k];
      const double sxy = c.eta * (uy[k] + vx[k]);
      const double tx = sxx * l.nx + sxy * l.ny, ty = sxy * l.nx + syy * l.ny;
      const double u = field.vx[k], v = field.vy[k];
      stress += w[m] * (u * tx + v * ty);
      conv += w[m] * 0.5 * c.rho * (u * u + v * v) * (u * l.nx + v * l.ny);
    }
    auto it = std::find_if(b.parts.begin(), b.parts.end(),
                           [&](const BoundaryPartTerms& p) { return p.name == part_of_face[f]; });
    if (it == b.parts.end()) {
      b.parts.push_back({part_of_face[f], 0.0, 0.0});
      it = b.parts.end() - 1;
    }
    it->stress_work += stress;
    it->convective_flux += conv;
    b.total_rate += stress - conv;
  }
  return b;
}

double budget_defect(const EnergyBudget& budget, double e_minus, double e_plus, double dt) {
  return (e_plus - e_minus) / (2.0 * dt) - budget.total_rate;
}

std::string energy_budget_csv(const EnergyBudget& b) {
  std::ostringstream os;
  os << "term,part,value\n";
  os << "volume_dissipation,,"<< fmt_double(b.volume_dissipation) << '\n';
  os << "body_work,," << fmt_double(b.body_work) << '\n';
  for (const auto& p : b.parts) {
    os << "boundary_stress_work," << p.name << ',' << fmt_double(p.stress_work) << '\n';
    os << "convective_flux," << p.name << ',' << fmt_double(p.convective_flux) << '\n';
  }
  os << "total_rate,," << fmt_double(b.total_rate) << '\n';
  return os.str();
}

const char* to_string(OutflowVariant v) {
  switch (v) {
    case OutflowVariant::DBC1: return "DBC1";
    case OutflowVariant::DBC2: return "DBC2";
    case OutflowVariant::PrescribedOutflow: return "PrescribedOutflow";
    case OutflowVariant::DBC3: return "DBC3";
    case OutflowVariant::DBC4: return "DBC4";
    case OutflowVariant::DBC5: return "DBC5";
    case OutflowVariant::DBC6: return "DBC6";
    case OutflowVariant::DBC7: return "DBC7";
  }
  return "unknown";
}

OutflowVariant parse_outflow_variant(const std::string& name) {
  std::string s;
  for (char ch : name) s += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (auto v : {OutflowVariant::DBC1, OutflowVariant::DBC2, OutflowVariant::PrescribedOutflow, OutflowVariant::DBC3,
                 OutflowVariant::DBC4, OutflowVariant::DBC5, OutflowVariant::DBC6, OutflowVariant::DBC7}) {
    std::string t = to_string(v);
    for (auto& ch : t) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (s == t) return v;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown outflow variant '" + name + "'");
}

namespace {

void require(const Eigen::VectorXd& a, std::size_t dim, const char* name) {
  if (a.size() == 0) throw Error(ErrorKind::MissingTrace, std::string("outflow trace '") + name + "' not supplied");
  if (std::size_t(a.size()) != dim)
    throw Error(ErrorKind::InvalidArgument, std::string("outflow trace '") + name + "' has the wrong dimension");
}

}  // namespace

double outflow_dissipation_residual(const OutflowTrace& trace, OutflowVariant variant) {
  const std::size_t d = std::size_t(trace.nu.size());
  if (d == 0) throw Error(ErrorKind::MissingTrace, "outflow normal not supplied");
  const Eigen::VectorXd& nu = trace.nu;
  const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(long(d), long(d)) - nu * nu.transpose();
  const bool linear = variant != OutflowVariant::DBC1 && variant != OutflowVariant::DBC2;
  const bool stress = variant == OutflowVariant::DBC5 || variant == OutflowVariant::DBC6 ||
                      variant == OutflowVariant::DBC7;
  double total = 0.0;
  for (const auto& pt : trace.points) {
    require(pt.v, d, "v");
    require(pt.dt_v, d, "dt_v");
    if (pt.grad_v.size() == 0) throw Error(ErrorKind::MissingTrace, "outflow trace 'grad_v' not supplied");
    if (linear) require(pt.v_out, d, "v_out");
    if (stress) require(pt.s_nu, d, "s_nu");
    const Eigen::VectorXd conv_nl = pt.dt_v + pt.grad_v * pt.v;
    Eigen::VectorXd r;
    switch (variant) {
      case OutflowVariant::DBC1: r = conv_nl; break;
      case OutflowVariant::DBC2:
        r.resize(long(d) + 1);
        r << P * pt.v, conv_nl.dot(nu);
        break;
      case OutflowVariant::PrescribedOutflow:
        r.resize(long(d) + 1);
        r << pt.v.dot(nu) - pt.v_out.dot(nu), P * conv_nl;
        break;
      case OutflowVariant::DBC3: r = pt.dt_v + pt.grad_v * pt.v_out; break;
      case OutflowVariant::DBC4: r = pt.dt_v + pt.v_out.dot(nu) * (pt.grad_v * nu); break;
      case OutflowVariant::DBC5: r = trace.alpha * (pt.dt_v + pt.grad_v * pt.v_out) + pt.s_nu; break;
      case OutflowVariant::DBC6:
        r.resize(long(d) + 1);
        r << P * pt.v, trace.alpha * (pt.dt_v + pt.grad_v * pt.v_out).dot(nu) + pt.s_nu.dot(nu);
        break;
      case OutflowVariant::DBC7:
        r.resize(long(d) + 1);
        r << pt.v.dot(nu), P * (trace.alpha * (pt.dt_v + pt.grad_v * pt.v_out) + pt.s_nu);
        break;
    }
    total += pt.weight * r.norm();
  }
  return total;
}

double outflow_energy_flux(const OutflowTrace& trace) {
  const std::size_t d = std::size_t(trace.nu.size());
  double total = 0.0;
  for (const auto& pt : trace.points) {
    require(pt.v, d, "v");
    require(pt.dt_v, d, "dt_v");
    if (pt.grad_v.size() == 0) throw Error(ErrorKind::MissingTrace, "outflow trace 'grad_v' not supplied");
    total += pt.weight * trace.rho * pt.v.dot(pt.dt_v + pt.grad_v * pt.v);
  }
  return total;
}

FaceTraces face_traces(const BoxGrid& grid, const RVec& f) {
  FaceTraces t;
  for (std::size_t k = 0; k < kFaces.size(); ++k) {
    const FaceLine l = face_line(grid, kFaces[k]);
    for (std::size_t n : l.nodes) t.values[k].push_back(f[n]);
  }
  return t;
}

double compat_functional(const BoxGrid& grid, const RVec& phi, const RVec& psi, const FaceTraces& eta, Quadrature q) {
  if (phi.size() != grid.nodes() || psi.size() != grid.nodes())
    throw Error(ErrorKind::InvalidArgument, "phi and psi must be nodal on the grid");
  double s = 0.0;
  for (std::size_t k = 0; k < kFaces.size(); ++k) {
    const FaceLine l = face_line(grid, kFaces[k]);
    if (eta.values[k].size() != l.nodes.size())
      throw Error(ErrorKind::InvalidArgument, "face trace length does not match the grid");
    const RVec w = quadrature_weights(l.nodes.size() - 1, l.h, q);
    for (std::size_t m = 0; m < l.nodes.size(); ++m) s += w[m] * phi[l.nodes[m]] * eta.values[k][m];
  }
  RVec prod(phi.size());
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = phi[k] * psi[k];
  return s - volume_integral(grid, prod, q);
}

double compat_identity_defect(const BoxGrid& grid, const RVec& ux, const RVec& uy, const RVec& phi, Quadrature q) {
  const RVec div_a = ddx(grid, ux, 2), div_b = ddy(grid, uy, 2);
  RVec psi(div_a.size());
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] = div_a[k] + div_b[k];
  FaceTraces eta;
  for (std::size_t k = 0; k < kFaces.size(); ++k) {
    const FaceLine l = face_line(grid, kFaces[k]);
    for (std::size_t n : l.nodes) eta.values[k].push_back(l.nx * ux[n] + l.ny * uy[n]);
  }
  const RVec px = ddx(grid, phi, 2), py = ddy(grid, phi, 2);
  RVec gu(phi.size());
  for (std::size_t k = 0; k < gu.size(); ++k) gu[k] = px[k] * ux[k] + py[k] * uy[k];
  return compat_functional(grid, phi, psi, eta, q) - volume_integral(grid, gu, q);
}

}  // namespace stokes_outflow
