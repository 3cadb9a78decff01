#include "stokes_outflow/timedomain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stokes_outflow/banded.hpp"
#include "stokes_outflow/csv.hpp"

namespace stokes_outflow {

YGrid make_ygrid(std::size_t n_points, double y_max) {
  if (n_points < 16) throw Error(ErrorKind::InvalidArgument, "YGrid needs at least 16 points");
  if (!(y_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "YGrid needs y_max > 0");
  return {n_points, y_max, y_max / double(n_points - 1)};
}

YGrid resolving_ygrid(const ModelParams& params, const Mode& mode, std::size_t n_points, double decay_lengths) {
  const double s = std::sqrt(params.reynolds);
  double rate = (s * mode.omega).real();
  if (mode.zeta_abs > 0.0) rate = std::min(rate, s * mode.zeta_abs);
  if (!(rate > 0.0)) throw Error(ErrorKind::InvalidArgument, "mode does not decay");
  return make_ygrid(n_points, decay_lengths / rate);
}

TimeGrid make_timegrid(double horizon, std::size_t n_steps) {
  if (!(horizon > 0.0) || n_steps == 0) throw Error(ErrorKind::InvalidArgument, "TimeGrid needs T > 0, n > 0");
  return {horizon / double(n_steps), n_steps};
}

namespace {

/// A boundary row as a linear combination of the traces v, v', w, w', p.
/// Coefficients in m* are multiplied by the spectral shift (the time derivative).
struct TraceRow {
  CVec cv, cdv, mv;
  cplx cw = 0.0, cdw = 0.0, mw = 0.0, cp = 0.0;
};

/// Boundary rows written from the raw boundary conditions, independent of
/// the analytic solver.
std::vector<TraceRow> raw_rows(const ModelParams& prm, const RVec& xi, BoundaryCondition bc) {
  const std::size_t nt = xi.size();
  const double ire = 1.0 / prm.reynolds;
  std::vector<TraceRow> rows(nt + 1);
  for (auto& r : rows) {
    r.cv.assign(nt, 0.0);
    r.cdv.assign(nt, 0.0);
    r.mv.assign(nt, 0.0);
  }
  for (std::size_t k = 0; k < nt; ++k) {
    TraceRow& r = rows[k];
    const cplx ixi(0.0, xi[k]);
    switch (bc) {
      case BoundaryCondition::TDO:
      case BoundaryCondition::FDO:
        r.mv[k] = prm.alpha;
        r.cv[k] = prm.alpha * prm.epsilon;
        r.cdv[k] = -(prm.alpha * prm.v_out + ire);
        r.cw = -ire * ixi;
        break;
      case BoundaryCondition::NDO:
      case BoundaryCondition::Dirichlet:
        r.cv[k] = 1.0;
        break;
      case BoundaryCondition::Navier:
        r.cv[k] = prm.wall_friction;
        r.cdv[k] = -ire;
        r.cw = -ire * ixi;
        break;
      case BoundaryCondition::Neumann:
        r.cdv[k] = -ire;
        r.cw = -ire * ixi;
        break;
    }
  }
  TraceRow& r = rows[nt];
  switch (bc) {
    case BoundaryCondition::TDO:
    case BoundaryCondition::Dirichlet:
    case BoundaryCondition::Navier:
      r.cw = 1.0;
      break;
    case BoundaryCondition::NDO:
    case BoundaryCondition::FDO:
      r.mw = prm.alpha;
      r.cw = prm.alpha * prm.epsilon;
      r.cdw = -(prm.alpha * prm.v_out + 2.0 * ire);
      r.cp = 1.0;
      break;
    case BoundaryCondition::Neumann:
      r.cdw = -2.0 * ire;
      r.cp = 1.0;
      break;
  }
  return rows;
}

/// Staggered layout: node block j holds (v_1..v_{nt}, w) at y_j and p at y_{j+1/2}.
struct Layout {
  std::size_t nt, n, blk;
  std::size_t v(std::size_t j, std::size_t k) const { return j * blk + k; }
  std::size_t w(std::size_t j) const { return j * blk + nt; }
  std::size_t p(std::size_t j) const { return j * blk + nt + 1; }  // p_{j+1/2}
  std::size_t unknowns() const { return n * blk; }
};

/// Assembles the discrete operator for time derivative replaced by `tshift`
/// (lambda for the resolvent, 1/dt for implicit Euler). The epsilon shift is
/// part of the operator.
BandedMatrix assemble(const ModelParams& prm, const RVec& xi, cplx tshift, BoundaryCondition bc,
                      const YGrid& g) {
  const std::size_t nt = xi.size();
  const Layout L{nt, g.n_points, nt + 2};
  const double h = g.spacing;
  const double ire = 1.0 / prm.reynolds;
  double xi2 = 0.0;
  for (double x : xi) xi2 += x * x;
  const cplx diag = tshift + prm.epsilon + ire * xi2;
  BandedMatrix a(L.unknowns(), 2 * L.blk, 3 * L.blk);
  const std::size_t n = L.n;

  // Boundary rows at y = 0 in block 0.
  const auto rows = raw_rows(prm, xi, bc);
  for (std::size_t r = 0; r <= nt; ++r) {
    const TraceRow& tr = rows[r];
    const std::size_t row = r;  // v rows then the w row of block 0
    for (std::size_t k = 0; k < nt; ++k) {
      const cplx c0 = tr.cv[k] + tshift * tr.mv[k];
      a(row, L.v(0, k)) += c0 - 1.5 * tr.cdv[k] / h;
      a(row, L.v(1, k)) += 2.0 * tr.cdv[k] / h;
      a(row, L.v(2, k)) += -0.5 * tr.cdv[k] / h;
    }
    const cplx c0 = tr.cw + tshift * tr.mw;
    a(row, L.w(0)) += c0 - 1.5 * tr.cdw / h;
    a(row, L.w(1)) += 2.0 * tr.cdw / h;
    a(row, L.w(2)) += -0.5 * tr.cdw / h;
    a(row, L.p(0)) += 1.5 * tr.cp;
    a(row, L.p(1)) += -0.5 * tr.cp;
  }

  // Interior momentum rows.
  const double lap = ire / (h * h);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    for (std::size_t k = 0; k < nt; ++k) {
      const std::size_t row = L.v(j, k);
      const cplx ixi(0.0, xi[k]);
      a(row, L.v(j - 1, k)) += -lap;
      a(row, L.v(j, k)) += diag + 2.0 * lap;
      a(row, L.v(j + 1, k)) += -lap;
      a(row, L.p(j - 1)) += 0.5 * ixi;
      a(row, L.p(j)) += 0.5 * ixi;
    }
    const std::size_t row = L.w(j);
    a(row, L.w(j - 1)) += -lap;
    a(row, L.w(j)) += diag + 2.0 * lap;
    a(row, L.w(j + 1)) += -lap;
    a(row, L.p(j - 1)) += -1.0 / h;
    a(row, L.p(j)) += 1.0 / h;
  }

  // Divergence at half nodes j + 1/2, stored in the p slot of block j.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t row = L.p(j);
    for (std::size_t k = 0; k < nt; ++k) {
      const cplx ixi(0.0, xi[k]);
      a(row, L.v(j, k)) += 0.5 * ixi;
      a(row, L.v(j + 1, k)) += 0.5 * ixi;
    }
    a(row, L.w(j)) += -1.0 / h;
    a(row, L.w(j + 1)) += 1.0 / h;
  }

  // Far field: homogeneous Dirichlet; the last pressure slot is a dummy.
  for (std::size_t k = 0; k < nt; ++k) a(L.v(n - 1, k), L.v(n - 1, k)) = 1.0;
  a(L.w(n - 1), L.w(n - 1)) = 1.0;
  a(L.p(n - 1), L.p(n - 1)) = 1.0;
  return a;
}

DiscreteProfile unpack(const CVec& x, std::size_t nt, const YGrid& g) {
  const Layout L{nt, g.n_points, nt + 2};
  const std::size_t n = g.n_points;
  DiscreteProfile d;
  d.y.resize(n);
  d.v.assign(nt, CVec(n));
  d.w.resize(n);
  d.p.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    d.y[j] = g.at(j);
    for (std::size_t k = 0; k < nt; ++k) d.v[k][j] = x[L.v(j, k)];
    d.w[j] = x[L.w(j)];
  }
  d.p[0] = 1.5 * x[L.p(0)] - 0.5 * x[L.p(1)];
  for (std::size_t j = 1; j + 1 < n; ++j) d.p[j] = 0.5 * (x[L.p(j - 1)] + x[L.p(j)]);
  d.p[n - 1] = 1.5 * x[L.p(n - 2)] - 0.5 * x[L.p(n - 3)];
  return d;
}

void put_boundary_data(CVec& rhs, const ModeData& data, std::size_t nt) {
  for (std::size_t k = 0; k < nt; ++k) rhs[k] = data.h_v[k];
  rhs[nt] = data.h_w;
}

}  // namespace

DiscreteProfile fd_mode_bvp(const ModelParams& params, const Mode& mode, BoundaryCondition bc,
                            const ModeData& data, const YGrid& ygrid) {
  if (mode.zeta_abs == 0.0) throw Error(ErrorKind::ZeroTangentialMode, "fd_mode_bvp requires |zeta| > 0");
  const std::size_t nt = mode.xi.size();
  if (data.h_v.size() != nt) throw Error(ErrorKind::InvalidArgument, "fd_mode_bvp: h_v length mismatch");
  BandedLU lu(assemble(params, mode.xi, mode.lambda, bc, ygrid));
  CVec rhs((nt + 2) * ygrid.n_points, 0.0);
  put_boundary_data(rhs, data, nt);
  lu.solve_in_place(rhs);
  return unpack(rhs, nt, ygrid);
}

double relative_l2(const DiscreteProfile& a, const DiscreteProfile& b) {
  double num = 0.0, den = 0.0;
  auto acc = [&](const CVec& x, const CVec& ref) {
    if (x.size() != ref.size()) throw Error(ErrorKind::InvalidArgument, "relative_l2: grid mismatch");
    for (std::size_t j = 0; j < x.size(); ++j) {
      num += std::norm(x[j] - ref[j]);
      den += std::norm(ref[j]);
    }
  };
  if (a.v.size() != b.v.size()) throw Error(ErrorKind::InvalidArgument, "relative_l2: component mismatch");
  for (std::size_t k = 0; k < a.v.size(); ++k) acc(a.v[k], b.v[k]);
  acc(a.w, b.w);
  acc(a.p, b.p);
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

cplx talbot_invert(const std::function<cplx(cplx)>& symbol_fn, double t, std::size_t n_nodes) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "talbot_invert requires t > 0");
  if (n_nodes < 2) throw Error(ErrorKind::InvalidArgument, "talbot_invert requires at least 2 nodes");
  const double m = double(n_nodes);
  const double r = 2.0 * m / (5.0 * t);
  // theta = 0 node: s = r, ds/dtheta factor reduces to 1.
  cplx sum = 0.5 * std::exp(r * t) * symbol_fn(cplx(r, 0.0));
  cplx sum_neg = sum;
  for (std::size_t k = 1; k < n_nodes; ++k) {
    const double th = double(k) * std::numbers::pi / m;
    const double cot = 1.0 / std::tan(th);
    const double sig = th + (th * cot - 1.0) * cot;
    const cplx s(r * th * cot, r * th);
    sum += std::exp(t * s) * symbol_fn(s) * cplx(1.0, sig);
    const cplx sc = std::conj(s);
    sum_neg += std::exp(t * sc) * symbol_fn(sc) * cplx(1.0, -sig);
  }
  return (r / m) * 0.5 * (sum + sum_neg);
}

TimeSeries step_ibvp(const ModelParams& params, const RVec& xi, BoundaryCondition bc,
                     const std::function<ModeData(double)>& h_of_t, const YGrid& ygrid, const TimeGrid& timegrid,
                     std::size_t record_every) {
  if (!(timegrid.dt > 0.0) || timegrid.n_steps == 0)
    throw Error(ErrorKind::InvalidArgument, "step_ibvp: invalid time grid");
  double xi2 = 0.0;
  for (double x : xi) xi2 += x * x;
  if (xi2 == 0.0) throw Error(ErrorKind::ZeroTangentialMode, "step_ibvp requires xi != 0");
  if (record_every == 0) record_every = 1;
  const std::size_t nt = xi.size();
  const std::size_t n = ygrid.n_points;
  const Layout L{nt, n, nt + 2};
  const double dt = timegrid.dt;
  const double idt = 1.0 / dt;
  BandedLU lu(assemble(params, xi, cplx(idt, 0.0), bc, ygrid));
  const auto rows = raw_rows(params, xi, bc);

  CVec x(L.unknowns(), 0.0);
  TimeSeries out;
  for (std::size_t step = 1; step <= timegrid.n_steps; ++step) {
    const double t = dt * double(step);
    CVec rhs(L.unknowns(), 0.0);
    const ModeData d = h_of_t(t);
    if (d.h_v.size() != nt) throw Error(ErrorKind::InvalidArgument, "step_ibvp: h_v length mismatch");
    put_boundary_data(rhs, d, nt);
    // Old-level contributions of the time-derivative terms in the boundary rows.
    for (std::size_t r = 0; r <= nt; ++r) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < nt; ++k) acc += rows[r].mv[k] * x[L.v(0, k)];
      acc += rows[r].mw * x[L.w(0)];
      rhs[r] += idt * acc;
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
      for (std::size_t k = 0; k < nt; ++k) rhs[L.v(j, k)] = idt * x[L.v(j, k)];
      rhs[L.w(j)] = idt * x[L.w(j)];
    }
    lu.solve_in_place(rhs);
    x.swap(rhs);
    if (step % record_every == 0 || step == timegrid.n_steps) {
      out.t.push_back(t);
      out.frames.push_back(unpack(x, nt, ygrid));
    }
  }
  return out;
}

std::string time_series_csv(const TimeSeries& series) {
  std::ostringstream os;
  os << "t,y,field_name,re,im\n";
  for (std::size_t f = 0; f < series.frames.size(); ++f) {
    const auto& fr = series.frames[f];
    const std::string ts = fmt_double(series.t[f]);
    for (std::size_t j = 0; j < fr.y.size(); ++j) {
      const std::string ys = fmt_double(fr.y[j]);
      auto row = [&](const std::string& name, cplx c) {
        os << ts << ',' << ys << ',' << name << ',' << fmt_double(c.real()) << ',' << fmt_double(c.imag()) << '\n';
      };
      for (std::size_t k = 0; k < fr.v.size(); ++k) row("v" + std::to_string(k + 1), fr.v[k][j]);
      row("w", fr.w[j]);
      row("p", fr.p[j]);
    }
  }
  return os.str();
}

}  // namespace stokes_outflow
