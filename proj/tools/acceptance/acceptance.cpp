#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "stokes_outflow/diagnostics.hpp"
#include "stokes_outflow/parallel.hpp"
#include "stokes_outflow/resolvent.hpp"
#include "stokes_outflow/symbols.hpp"
#include "stokes_outflow/timedomain.hpp"
#include "stokes_outflow/wedge.hpp"

namespace stokes_outflow::acceptance {

namespace {

using Rng = std::mt19937_64;
constexpr double kPi = std::numbers::pi;
constexpr double kTheta = kPi / 4.0;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
double log_uniform(Rng& rng, double lo, double hi) { return std::pow(10.0, uniform(rng, lo, hi)); }

cplx random_cplx(Rng& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

/// lambda with |arg lambda| < pi - theta and log-uniform modulus.
cplx sector_lambda(Rng& rng, double lo, double hi) {
  const double r = log_uniform(rng, lo, hi);
  const double a = uniform(rng, -(kPi - kTheta), kPi - kTheta);
  return std::polar(r, a);
}

/// Tangential wavevector of length n - 1 with log-uniform modulus.
RVec random_xi(Rng& rng, std::size_t n, double lo, double hi) {
  const double r = log_uniform(rng, lo, hi);
  if (n == 2) return {uniform(rng, 0.0, 1.0) < 0.5 ? -r : r};
  const double a = uniform(rng, 0.0, 2.0 * kPi);
  return {r * std::cos(a), r * std::sin(a)};
}

ModelParams random_params(Rng& rng) {
  return make_params(log_uniform(rng, -1.0, 1.0), log_uniform(rng, -1.0, 1.0), uniform(rng, 0.0, 2.0),
                     uniform(rng, 0.0, 1.0));
}

ModeData random_data(Rng& rng, std::size_t nt) {
  ModeData d;
  for (std::size_t k = 0; k < nt; ++k) d.h_v.push_back(random_cplx(rng));
  d.h_w = random_cplx(rng);
  return d;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

double rel(cplx a, cplx b, double floor = 0.0) {
  const double s = std::max({std::abs(a), std::abs(b), floor});
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Criterion 1: analytic-ansatz residuals.
CriterionResult c1(const Options& opt) {
  CriterionResult r{1, "analytic-ansatz residuals", true, "", 0.0};
  Rng rng(opt.seed + 1);
  const std::vector<BoundaryCondition> bcs = {BoundaryCondition::TDO, BoundaryCondition::NDO,
                                              BoundaryCondition::FDO, BoundaryCondition::Dirichlet};
  double worst = 0.0;
  std::size_t fails = 0, total = 0;
  for (auto bc : bcs)
    for (std::size_t i = 0; i < 200; ++i) {
      const std::size_t n = 2 + (i % 2);
      const ModelParams p = random_params(rng);
      const Mode m = make_mode(p, sector_lambda(rng, -2.0, 2.0), random_xi(rng, n, -1.0, 1.0));
      const ModeData d = random_data(rng, n - 1);
      const ModeResidual res = residual_mode(solve_mode(p, m, bc, d), bc, d, default_residual_samples(m));
      const double ratio = std::max({res.momentum_res, res.div_res, res.bc_res}) / (1.0 + data_norm(d));
      worst = std::max(worst, ratio);
      ++total;
      if (!(ratio < 1e-10)) ++fails;
    }
  r.pass = fails == 0;
  r.detail = std::to_string(total) + " modes, max residual/(1+|data|) = " + sci(worst) + " (bound 1e-10), " +
             std::to_string(fails) + " failures";
  return r;
}

// Criterion 2: symbol identities.
CriterionResult c2(const Options& opt) {
  CriterionResult r{2, "symbol identities", true, "", 0.0};
  Rng rng(opt.seed + 2);
  double e_ndo = 0.0, e_fdo = 0.0, e_m = 0.0, e_tdo = 0.0, e_two = 0.0;
  std::size_t fails = 0;
  const std::size_t n_samples = 10000;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::size_t n = 2 + (i % 2);
    const ModelParams p = random_params(rng);
    const Mode m = make_mode(p, sector_lambda(rng, -6.0, 6.0), random_xi(rng, n, -6.0, 6.0));
    const SigmaPi nd = ndo_symbols(p, m), fd = fdo_symbols(p, m);
    const double a1 = std::abs(nd.sigma_sym + nd.pi_sym - 1.0) / std::max({1.0, std::abs(nd.sigma_sym), std::abs(nd.pi_sym)});
    const double a2 = std::abs(fd.sigma_sym + fd.pi_sym - 1.0) / std::max({1.0, std::abs(fd.sigma_sym), std::abs(fd.pi_sym)});
    const TdoComponents t = tdo_components(p, m);
    const double a3 = std::abs(t.m1 + t.m2 + t.m3 - 1.0) /
                      std::max({1.0, std::abs(t.m1), std::abs(t.m2), std::abs(t.m3)});
    const double a4 = rel(t.M, tdo_compact_symbol(p, m));
    const double a5 = rel(fd.pi_sym, fdo_pi_via_inverse(p, m));
    e_ndo = std::max(e_ndo, a1);
    e_fdo = std::max(e_fdo, a2);
    e_m = std::max(e_m, a3);
    e_tdo = std::max(e_tdo, a4);
    e_two = std::max(e_two, a5);
    if (!(a1 < 1e-12 && a2 < 1e-12 && a3 < 1e-12 && a4 < 1e-12 && a5 < 1e-10)) ++fails;
  }
  r.pass = fails == 0;
  r.detail = std::to_string(n_samples) + " modes: NDO sum " + sci(e_ndo) + ", FDO sum " + sci(e_fdo) +
             ", m-sum " + sci(e_m) + ", TDO compact " + sci(e_tdo) + " (bounds 1e-12), FDO two-route " +
             sci(e_two) + " (bound 1e-10), " + std::to_string(fails) + " failures";
  return r;
}

// Criterion 3: sector certificate.
CriterionResult c3(const Options& opt) {
  CriterionResult r{3, "sector certificate", true, "", 0.0};
  const ModelParams p = make_params(1.0, 1.0, 0.5, 0.1);
  const SymbolReport rep = sector_verify(p, kTheta, 10000, opt.seed + 3);
  double sup_m = 0.0;
  for (const char* name : {"m1", "m2", "m3"})
    if (const SymbolStats* s = rep.find(name)) sup_m = std::max(sup_m, s->sup_abs);
  r.pass = rep.violations == 0 && sup_m <= 1.0 + 1e-9;
  r.detail = "theta = pi/4, 10000 samples: " + std::to_string(rep.violations) +
             " argument violations (bound 0), sup|m_j| = " + sci(sup_m) + " (bound 1 + 1e-9)";
  return r;
}

// Criterion 4: small-alpha limit of the NDO symbols.
CriterionResult c4(const Options& opt) {
  CriterionResult r{4, "small-alpha limit", true, "", 0.0};
  Rng rng(opt.seed + 4);
  const ModelParams tmpl = make_params(1.0, 1.0, 0.5, 0.2);
  double worst_ratio = 0.0, worst_pi = 0.0;
  bool ratio_ok = true, pi_ok = true;
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 2 + (i % 2);
    const Mode m = make_mode(tmpl, sector_lambda(rng, -1.0, 1.0), random_xi(rng, n, -0.5, 0.5));
    const auto pts = alpha_limit_probe(tmpl, m, {1e-3, 1e-4}, LimitVariant::NDO);
    const double s3 = std::abs(pts[0].symbols.sigma_sym) / pts[0].alpha;
    const double s4 = std::abs(pts[1].symbols.sigma_sym) / pts[1].alpha;
    const double change = std::abs(s4 / s3 - 1.0);
    worst_ratio = std::max(worst_ratio, change);
    if (!(change < 0.05)) ratio_ok = false;
    const double dev = std::abs(pts[1].symbols.pi_sym - 1.0);
    const double bound = 1e-2 * s4 * pts[1].alpha;
    worst_pi = std::max(worst_pi, dev / bound);
    if (!(dev < bound)) pi_ok = false;
  }
  r.pass = ratio_ok && pi_ok;
  r.detail = "10 modes: max |Sigma/alpha| change " + sci(worst_ratio) + " (bound 5e-2); max |Pi-1| / (1e-2 slope alpha) = " +
             sci(worst_pi) + " (bound 1)";
  return r;
}

DiscreteProfile analytic_profile(const ModeProfile& prof, const YGrid& g) {
  DiscreteProfile d;
  const std::size_t nt = prof.mode.xi.size();
  d.v.assign(nt, CVec(g.n_points));
  d.w.resize(g.n_points);
  d.p.resize(g.n_points);
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double y = g.at(j);
    d.y.push_back(y);
    const ProfileValue v = eval_profile(prof, y);
    for (std::size_t k = 0; k < nt; ++k) d.v[k][j] = v.v_hat[k];
    d.w[j] = v.w_hat;
    d.p[j] = v.p_hat;
  }
  return d;
}

// Criterion 5: finite-difference oracle agreement.
CriterionResult c5(const Options& opt) {
  CriterionResult r{5, "finite-difference oracle agreement", true, "", 0.0};
  Rng rng(opt.seed + 5);
  const std::vector<BoundaryCondition> bcs = {BoundaryCondition::TDO, BoundaryCondition::NDO,
                                              BoundaryCondition::FDO, BoundaryCondition::Dirichlet};
  struct Case {
    ModelParams p;
    Mode m;
    BoundaryCondition bc;
    ModeData d;
  };
  std::vector<Case> cases;
  for (auto bc : bcs)
    for (int i = 0; i < 20; ++i) {
      const std::size_t n = 2 + std::size_t(i % 2);
      const double re = log_uniform(rng, -0.3, 0.3);
      const ModelParams p = make_params(log_uniform(rng, -0.5, 0.5), re, uniform(rng, 0.0, 1.0),
                                        uniform(rng, 0.1, 0.5));
      RVec xi = random_xi(rng, n, 0.0, std::log10(2.0));
      for (auto& x : xi) x *= std::sqrt(re);
      const Mode m = make_mode(p, sector_lambda(rng, std::log10(0.05), std::log10(0.5)), xi);
      cases.push_back({p, m, bc, random_data(rng, n - 1)});
    }
  std::vector<double> e_fine(cases.size()), e_coarse(cases.size());
  parallel_for(cases.size(), [&](std::size_t c) {
    const Case& k = cases[c];
    const ModeProfile prof = solve_mode(k.p, k.m, k.bc, k.d);
    for (std::size_t level = 0; level < 2; ++level) {
      const YGrid g = resolving_ygrid(k.p, k.m, level == 0 ? 1000 : 2000, 16.0);
      const double e = relative_l2(fd_mode_bvp(k.p, k.m, k.bc, k.d, g), analytic_profile(prof, g));
      (level == 0 ? e_coarse : e_fine)[c] = e;
    }
  });
  double worst = 0.0, smin = 1e300, smax = -1e300;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    worst = std::max(worst, e_fine[c]);
    const double s = std::log2(e_coarse[c] / e_fine[c]);
    smin = std::min(smin, s);
    smax = std::max(smax, s);
  }
  r.pass = worst < 1e-4 && smin >= 1.8 && smax <= 2.2;
  r.detail = std::to_string(cases.size()) + " modes at N_y = 2000: max relative L2 " + sci(worst) +
             " (bound 1e-4); refinement slopes in [" + sci(smin) + ", " + sci(smax) + "] (bound 2 +- 0.2)";
  return r;
}

// Criterion 6: time-domain cross-check.
CriterionResult c6(const Options&) {
  CriterionResult r{6, "time-domain cross-check", true, "", 0.0};
  double talbot_err = 0.0;
  talbot_err = std::max(talbot_err, std::abs(talbot_invert([](cplx s) { return 1.0 / s; }, 1.0, 32) - 1.0));
  for (double a : {0.5, 1.0, 2.0}) {
    const cplx f = talbot_invert([a](cplx s) { return 1.0 / (s + a); }, 1.0, 32);
    talbot_err = std::max(talbot_err, std::abs(f - std::exp(-a)) / std::exp(-a));
  }

  // Step normal datum for the NDO condition; compare the pressure trace.
  const ModelParams p = make_params(1.0, 1.0, 0.0, 0.5);
  const RVec xi = {1.0};
  const cplx ref = talbot_invert(
      [&](cplx s) {
        const Mode m = make_mode(p, s, xi);
        return ndo_symbols(p, m).pi_sym / s;
      },
      1.0, 32);
  const YGrid yg = make_ygrid(1501, 30.0);
  const TimeGrid tg = make_timegrid(1.0, 1000);
  const auto step = [](double) { return ModeData{{0.0}, 1.0}; };
  const TimeSeries ts = step_ibvp(p, xi, BoundaryCondition::NDO, step, yg, tg, 1000);
  const cplx got = ts.frames.back().p[0];
  const double err = std::abs(got - ref) / std::abs(ref);
  r.pass = talbot_err < 1e-8 && err < 1e-2;
  r.detail = "Talbot known pairs max error " + sci(talbot_err) + " (bound 1e-8); step_ibvp pressure trace at t = 1 relative error " +
             sci(err) + " (bound 1e-2)";
  return r;
}

// Criterion 7: wedge construction.
CriterionResult c7(const Options& opt) {
  CriterionResult r{7, "wedge construction", true, "", 0.0};
  Rng rng(opt.seed + 7);
  bool roundtrip = true;
  double parity = 0.0;
  for (int i = 0; i < 20; ++i) {
    NdArray f({5, 9, 3});
    for (auto& x : f.data) x = random_cplx(rng);
    for (std::size_t axis = 0; axis < 3; ++axis) {
      NdArray odd = f;
      const std::size_t len = f.shape[axis];
      std::size_t inner = 1;
      for (std::size_t d = axis + 1; d < 3; ++d) inner *= f.shape[d];
      for (std::size_t k = 0; k < odd.data.size(); ++k) {
        const std::size_t idx = (k / inner) % len;
        if (idx == 0 || idx == len - 1) odd.data[k] = 0.0;
      }
      const NdArray ge = extend(f, axis, Parity::Even), go = extend(odd, axis, Parity::Odd);
      if (restrict_half(ge, axis).data != f.data || restrict_half(go, axis).data != odd.data) roundtrip = false;
      parity = std::max({parity, parity_defect(ge, axis, Parity::Even), parity_defect(go, axis, Parity::Odd)});
    }
  }

  WedgeGrid grid;
  grid.nx = 8;
  grid.my = 8;
  grid.mz = 6;
  grid.lz = 2.0;
  const ModelParams p = make_params(1.0, 1.0, 0.5, 0.3);
  double wall = 0.0, field_parity = 0.0;
  std::size_t solves = 0;
  auto random_face = [&]() {
    FaceData d = zero_face_data(grid);
    for (NdArray* a : {&d.u, &d.v, &d.w})
      for (auto& x : a->data) x = random_cplx(rng);
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      d.v.data[ix * (grid.my + 1)] = 0.0;
      d.v.data[ix * (grid.my + 1) + grid.my] = 0.0;
    }
    return d;
  };
  auto remove_w_mean = [&](FaceData& d) {
    // Mean of the even extension, i.e. the zero mode seen by the half-space solve.
    const NdArray e = extend(d.w, 1, Parity::Even);
    cplx mean = 0.0;
    for (auto x : e.data) mean += x;
    mean /= double(e.data.size());
    for (auto& x : d.w.data) x -= mean;
  };
  for (int i = 0; i < 20; ++i) {
    FaceData in = random_face();
    remove_w_mean(in);
    const WedgeField f = solve_wedge_inflow(p, in, zero_wall_data(grid), grid, sector_lambda(rng, -1.0, 1.0));
    wall = std::max(wall, f.wall_residual);
    field_parity = std::max(field_parity, f.parity_error);
    ++solves;
    for (auto bc : {BoundaryCondition::TDO, BoundaryCondition::NDO, BoundaryCondition::FDO}) {
      FaceData out = random_face();
      if (bc == BoundaryCondition::TDO) remove_w_mean(out);
      const WedgeField g = solve_wedge_outflow(p, bc, out, grid, sector_lambda(rng, -1.0, 1.0));
      wall = std::max(wall, g.wall_residual);
      field_parity = std::max(field_parity, g.parity_error);
      ++solves;
    }
  }
  r.pass = roundtrip && parity == 0.0 && field_parity < 1e-12 && wall < 1e-8;
  r.detail = std::string("round trip ") + (roundtrip ? "bit-exact" : "NOT exact") + ", extension parity defect " +
             sci(parity) + ", solved-field parity defect " + sci(field_parity) + " (bound 1e-12), " +
             std::to_string(solves) + " reduced solves: max wall residual " + sci(wall) + " (bound 1e-8)";
  return r;
}

/// Equations that read each trace, written out from the edge formulas.
std::map<std::string, std::set<std::string>> edge_incidence(EdgeKind k) {
  std::map<std::string, std::set<std::string>> m;
  auto add = [&](const std::string& eq, std::initializer_list<const char*> names) {
    for (const char* n : names) m[n].insert(eq);
  };
  switch (k) {
    case EdgeKind::IF_W:
      add("E1", {"u_in_edge", "dnw_u_in_edge", "grad_e_h_wall_nw", "h_wall_edge"});
      add("E2", {"u_in_nw", "h_wall_nw"});
      add("E3", {"u_in_ng", "dnw_u_in_ng", "dng_h_wall_nw", "h_wall_ng"});
      break;
    case EdgeKind::TDO_W:
      add("E1", {"xi_edge", "dnw_xi_edge", "grad_e_h_wall_nw", "h_wall_edge"});
      add("E2", {"xi_nw", "h_wall_nw"});
      add("E3", {"h_ng", "dnw_h_ng", "dng_h_wall_nw", "h_wall_ng"});
      add("E4", {"dt_h_wall_nw", "dng_h_wall_nw", "h_wall_ng", "h_ng", "h_nw"});
      break;
    case EdgeKind::NDO_W:
      add("E1", {"h_edge", "dnw_h_edge", "grad_e_h_wall_nw", "h_wall_edge"});
      add("E2", {"h_nw", "h_wall_nw"});
      add("E3", {"eta", "dnw_eta", "dng_h_wall_nw", "h_wall_ng"});
      break;
    case EdgeKind::FDO_W:
      add("E1", {"xi_edge", "dnw_xi_edge", "grad_e_h_wall_nw", "h_wall_edge"});
      add("E2", {"xi_nw", "h_wall_nw"});
      add("E3", {"eta", "dnw_eta", "dng_h_wall_nw", "h_wall_ng"});
      add("E4", {"dt_h_wall_nw", "dng_h_wall_nw", "h_wall_ng", "eta", "h_nw"});
      break;
  }
  return m;
}

// Criterion 8: edge compatibility.
CriterionResult c8(const Options& opt) {
  CriterionResult r{8, "edge compatibility", true, "", 0.0};
  Rng rng(opt.seed + 8);
  double worst = 0.0;
  std::size_t mislocalized = 0, perturbations = 0;
  for (auto kind : {EdgeKind::IF_W, EdgeKind::TDO_W, EdgeKind::NDO_W, EdgeKind::FDO_W}) {
    EdgeBundle b;
    b.sigma = uniform(rng, 0.0, 1.0);
    b.v_out = uniform(rng, 0.0, 2.0);
    b.alpha = log_uniform(rng, -1.0, 1.0);
    b.reynolds = log_uniform(rng, -1.0, 1.0);
    for (const auto& name : required_traces(kind)) {
      CVec t(16);
      for (auto& x : t) x = random_cplx(rng);
      b.traces[name] = t;
    }
    make_compatible(kind, b);
    const EdgeCompatReport rep = check_edge_compat(kind, b, 1e-12);
    for (const auto& e : rep.equations) worst = std::max(worst, e.residual);
    if (!rep.satisfied) r.pass = false;
    for (const auto& [name, eqs] : edge_incidence(kind)) {
      EdgeBundle q = b;
      q.traces[name][3] += 1e-3;
      const EdgeCompatReport pr = check_edge_compat(kind, q, 1e-12);
      std::set<std::string> hit;
      for (const auto& e : pr.equations)
        if (e.residual > pr.tolerance) hit.insert(e.name);
      ++perturbations;
      if (hit != eqs) ++mislocalized;
    }
  }
  r.pass = r.pass && worst < 1e-12 && mislocalized == 0;
  r.detail = "compatible bundles max residual " + sci(worst) + " (bound 1e-12); " + std::to_string(perturbations) +
             " single-trace perturbations, " + std::to_string(mislocalized) + " not localized to their equations";
  return r;
}

/// Solenoidal manufactured flow v = exp(-t) curl(sin(a x + b) sin(c y + d)),
/// p = exp(-t) cos(x + 2 y) / 2, with the body force that balances the
/// momentum equation.
BoxField manufactured_flow(const BoxGrid& g, const FluidConstants& c, double t) {
  const double a = 1.3, b0 = 0.4, cc = 0.9, d0 = 0.2;
  const double k2 = a * a + cc * cc;
  BoxField f = zero_box_field(g);
  const double e = std::exp(-t);
  for (std::size_t j = 0; j <= g.ny; ++j)
    for (std::size_t i = 0; i <= g.nx; ++i) {
      const double x = g.x(i), y = g.y(j);
      const double sa = std::sin(a * x + b0), ca = std::cos(a * x + b0);
      const double sc = std::sin(cc * y + d0), ccs = std::cos(cc * y + d0);
      const double u = e * cc * sa * ccs, v = -e * a * ca * sc;
      const double ux = e * a * cc * ca * ccs, uy = -e * cc * cc * sa * sc;
      const double vx = e * a * a * sa * sc, vy = -e * a * cc * ca * ccs;
      const double px = -0.5 * e * std::sin(x + 2.0 * y), py = -e * std::sin(x + 2.0 * y);
      const std::size_t k = g.at(i, j);
      f.vx[k] = u;
      f.vy[k] = v;
      f.p[k] = 0.5 * e * std::cos(x + 2.0 * y);
      f.bx[k] = -u + (u * ux + v * uy) + (c.eta * k2 * u + px) / c.rho;
      f.by[k] = -v + (u * vx + v * vy) + (c.eta * k2 * v + py) / c.rho;
    }
  return f;
}

// Criterion 9: energy diagnostics.
CriterionResult c9(const Options& opt) {
  CriterionResult r{9, "energy diagnostics", true, "", 0.0};
  const FluidConstants fc = make_fluid_constants(1.2, 0.7);
  BoxGrid g;
  g.nx = g.ny = 128;
  const double t = 0.3, dt = 1e-4;
  const EnergyBudget b =
      energy_rate(manufactured_flow(g, fc, t), fc, {"inflow", "outflow", "wall", "wall"});
  const double defect = budget_defect(b, kinetic_energy(manufactured_flow(g, fc, t - dt), fc),
                                      kinetic_energy(manufactured_flow(g, fc, t + dt), fc), dt);
  double scale = std::abs(b.volume_dissipation) + std::abs(b.body_work);
  for (const auto& part : b.parts) scale += std::abs(part.stress_work) + std::abs(part.convective_flux);
  const double budget_rel = std::abs(defect) / std::max(1.0, scale);

  // Outflow traces built to satisfy the convective and fully dynamic variants.
  Rng rng(opt.seed + 9);
  OutflowTrace t1, t5;
  t1.nu = t5.nu = Eigen::Vector3d(0.0, 0.0, 1.0);
  t5.alpha = 1.0;
  for (int i = 0; i < 64; ++i) {
    OutflowTracePoint pt;
    pt.weight = 1.0 / 64.0;
    pt.v = Eigen::Vector3d::Random();
    pt.grad_v = Eigen::Matrix3d::Random();
    pt.v_out = Eigen::Vector3d(0.0, 0.0, uniform(rng, 0.5, 1.5));
    OutflowTracePoint p1 = pt;
    p1.dt_v = -(pt.grad_v * pt.v);
    t1.points.push_back(p1);
    OutflowTracePoint p5 = pt;
    p5.dt_v = Eigen::Vector3d::Random();
    p5.s_nu = -t5.alpha * (p5.dt_v + pt.grad_v * pt.v_out);
    t5.points.push_back(p5);
  }
  const double r1 = outflow_dissipation_residual(t1, OutflowVariant::DBC1);
  const double r5 = outflow_dissipation_residual(t5, OutflowVariant::DBC5);

  // Compatibility identity under refinement.
  auto defect_at = [](std::size_t n) {
    BoxGrid h;
    h.nx = h.ny = n;
    h.lx = 1.0;
    h.ly = 0.8;
    RVec ux(h.nodes()), uy(h.nodes()), phi(h.nodes());
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= n; ++i) {
        const double x = h.x(i), y = h.y(j);
        ux[h.at(i, j)] = std::sin(2.0 * x) * std::cos(y);
        uy[h.at(i, j)] = std::exp(0.5 * x) * std::sin(1.5 * y);
        phi[h.at(i, j)] = std::cos(x + y) + x * y;
      }
    return std::abs(compat_identity_defect(h, ux, uy, phi));
  };
  const double d32 = defect_at(32), d64 = defect_at(64), d128 = defect_at(128);
  const double s1 = std::log2(d32 / d64), s2 = std::log2(d64 / d128);
  const bool order_ok = std::abs(s1 - 2.0) <= 0.2 && std::abs(s2 - 2.0) <= 0.2;

  r.pass = budget_rel < 1e-6 && r1 < 1e-12 && r5 < 1e-12 && order_ok;
  r.detail = "budget closure at 128^2 " + sci(budget_rel) + " (bound 1e-6); DBC1 residual " + sci(r1) +
             ", DBC5 residual " + sci(r5) + " (bound 1e-12); compatibility identity slopes " + sci(s1) + ", " +
             sci(s2) + " (bound 2 +- 0.2)";
  return r;
}

// Criterion 10: end-to-end CLI run.
CriterionResult c10(const Options& opt) {
  CriterionResult r{10, "end-to-end verify", false, "", 0.0};
  if (opt.cli_path.empty() || opt.verify_config.empty()) {
    r.detail = "CLI path or verify config not supplied";
    return r;
  }
  const std::string cmd = "\"" + opt.cli_path + "\" verify --config \"" + opt.verify_config + "\"";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int code = status;
#ifdef WEXITSTATUS
  if (status != -1) code = WEXITSTATUS(status);
#endif
  r.pass = code == 0 && secs < 300.0;
  r.detail = "verify exit code " + std::to_string(code) + " (expected 0), runtime " + sci(secs) + " s (bound 300 s)";
  return r;
}

/// Wall-clock limits per criterion, in seconds (0 = none).
double time_limit(int id) {
  switch (id) {
    case 1:
    case 2: return 10.0;
    case 5: return 60.0;
    default: return 0.0;
  }
}

}  // namespace

CriterionResult run_criterion(int id, const Options& opt) {
  static const std::function<CriterionResult(const Options&)> table[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  if (id < 1 || id > kCriteria) throw Error(ErrorKind::InvalidArgument, "criterion id out of range");
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](opt);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double limit = time_limit(id);
  if (limit > 0.0 && r.seconds >= limit) {
    r.pass = false;
    r.detail += "; runtime exceeds " + sci(limit) + " s";
  }
  return r;
}

std::vector<CriterionResult> run_core_criteria(const Options& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id, opt));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os.precision(3);
  os << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " (" << std::fixed
     << r.seconds << " s)";
  return os.str();
}

}  // namespace stokes_outflow::acceptance
