#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "acceptance.hpp"
#include "stokes_outflow/csv.hpp"
#include "stokes_outflow/resolvent.hpp"
#include "stokes_outflow/symbols.hpp"
#include "stokes_outflow/timedomain.hpp"
#include "stokes_outflow/wedge.hpp"

namespace stokes_outflow::cli {

bool RunResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* RunResult::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

const ModelParams& need_params(const Scenario& s) {
  if (!s.params) throw Error(ErrorKind::ParseError, "physics parameters are required for this command");
  return *s.params;
}

class Output {
public:
  Output(const Scenario& s, RunResult& r) : dir_(s.output_dir), result_(r) {}
  void write(const std::string& name, const std::string& text) {
    write_text_file((std::filesystem::path(dir_) / name).string(), text);
    result_.artifacts.push_back(name);
  }

private:
  std::string dir_;
  RunResult& result_;
};

/// Tangential component selector: "w" is the normal datum, "v" or "v<k>" a tangential one.
int component_index(const std::string& name, std::size_t nt) {
  if (name == "w") return -1;
  if (name == "v") return 0;
  if (name.size() >= 2 && name[0] == 'v') {
    const int k = std::stoi(name.substr(1)) - 1;
    if (k >= 0 && std::size_t(k) < nt) return k;
  }
  throw Error(ErrorKind::ParseError, "data.component '" + name + "' does not name a component");
}

BoundaryField make_boundary_field(const Scenario& s) {
  TangentialGrid g{s.grid_n, s.grid_length};
  BoundaryField f = zero_boundary_field(g);
  const int comp = component_index(s.data_component, g.dims());
  CVec& target = comp < 0 ? f.h_w : f.h_v[std::size_t(comp)];
  const double two_pi = 2.0 * 3.141592653589793;
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    const auto idx = g.unflatten(flat);
    if (s.data_kind == "harmonic") {
      if (s.data_index.size() != g.dims()) throw Error(ErrorKind::ParseError, "data.index needs one entry per grid axis");
      double phase = 0.0;
      for (std::size_t d = 0; d < g.dims(); ++d) phase += two_pi * double(s.data_index[d]) * double(idx[d]) / double(g.n[d]);
      target[flat] = s.data_amplitude * std::polar(1.0, phase);
    } else if (s.data_kind == "gaussian") {
      if (s.data_center.size() != g.dims()) throw Error(ErrorKind::ParseError, "data.center needs one entry per grid axis");
      double r2 = 0.0;
      for (std::size_t d = 0; d < g.dims(); ++d) {
        double dx = g.coord(d, idx[d]) - s.data_center[d];
        dx -= g.length[d] * std::round(dx / g.length[d]);
        r2 += dx * dx;
      }
      target[flat] = s.data_amplitude * std::exp(-0.5 * r2 / (s.data_width * s.data_width));
    } else {
      throw Error(ErrorKind::ParseError, "data.kind must be harmonic or gaussian");
    }
  }
  return f;
}

void run_symbols(const Scenario& s, RunResult& r, Output& out) {
  const SymbolSelector sel = parse_symbol_selector(s.selector);
  const SymbolReport rep = sector_verify(need_params(s), s.theta, s.n_samples, s.rng_seed, sel);
  out.write("symbols.csv", symbol_report_csv(rep));
  r.checks.push_back({"argument_ranges", rep.violations == 0, std::to_string(rep.violations) + " violations"});
  r.checks.push_back(
      {"identities", rep.identity_failures == 0, std::to_string(rep.identity_failures) + " failures"});
  if (sel == SymbolSelector::All || sel == SymbolSelector::Tdo) {
    double sup = 0.0;
    for (const char* n : {"m1", "m2", "m3"})
      if (const SymbolStats* st = rep.find(n)) sup = std::max(sup, st->sup_abs);
    r.checks.push_back({"m_bound", rep.bound_exceedances == 0,
                        "sup|m_j| = " + sci(sup) + ", " + std::to_string(rep.bound_exceedances) +
                            " samples above 1 + 1e-9"});
  }
}

void run_resolve(const Scenario& s, RunResult& r, Output& out) {
  const ModelParams& p = need_params(s);
  const FieldSpectrum spec = solve_spectrum(p, s.bc, make_boundary_field(s), s.lambda);
  double worst = 0.0;
  for (std::size_t flat = 0; flat < spec.profiles.size(); ++flat) {
    const auto& variants = spec.profiles[flat];
    ModeData d = spec.data[flat];
    const double w = 1.0 / double(variants.size());
    for (auto& c : d.h_v) c *= w;
    d.h_w *= w;
    for (const auto& prof : variants) {
      const ModeResidual res = residual_mode(prof, s.bc, d, default_residual_samples(prof.mode));
      worst = std::max(worst, std::max({res.momentum_res, res.div_res, res.bc_res}) / (1.0 + data_norm(d)));
    }
  }
  const GridField f = synthesize_field(spec, s.y_levels);
  double div = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < f.div.size(); ++k) {
    div = std::max(div, std::abs(f.div[k]));
    scale = std::max(scale, std::abs(f.w[k]));
    for (const auto& comp : f.v) scale = std::max(scale, std::abs(comp[k]));
  }
  out.write("field.csv", grid_field_csv(f, p, s.bc, s.lambda));
  r.checks.push_back({"mode_residuals", worst < 1e-10, "max residual/(1+|data|) = " + sci(worst)});
  const double rel_div = div / std::max(scale, 1e-300);
  r.checks.push_back({"divergence", rel_div < 1e-8, "max |div| / max |v| = " + sci(rel_div)});
}

void run_evolve(const Scenario& s, RunResult& r, Output& out) {
  const ModelParams& p = need_params(s);
  const std::size_t nt = s.mode_xi.size();
  const int comp = component_index(s.data_component, nt);
  ModeData h{CVec(nt, 0.0), 0.0};
  (comp < 0 ? h.h_w : h.h_v[std::size_t(comp)]) = s.data_amplitude;
  const YGrid yg = make_ygrid(s.ygrid_points, s.ygrid_y_max);
  const TimeGrid tg = make_timegrid(s.time_horizon, s.time_steps);
  const TimeSeries ts = step_ibvp(p, s.mode_xi, s.bc, [&](double) { return h; }, yg, tg, s.time_record_every);
  out.write("time_series.csv", time_series_csv(ts));

  // Analytic reference: inverse Laplace transform of the resolvent profile for data h / lambda.
  const double t = ts.t.back();
  const DiscreteProfile& num = ts.frames.back();
  DiscreteProfile ref = num;
  auto invert = [&](auto&& pick) {
    CVec vals(yg.n_points);
    for (std::size_t j = 0; j < yg.n_points; ++j) {
      const double y = yg.at(j);
      vals[j] = talbot_invert(
          [&](cplx lam) {
            const Mode m = make_mode(p, lam, s.mode_xi);
            ModeData d = h;
            for (auto& c : d.h_v) c /= lam;
            d.h_w /= lam;
            return pick(eval_profile(solve_mode(p, m, s.bc, d), y));
          },
          t);
    }
    return vals;
  };
  for (std::size_t k = 0; k < nt; ++k) ref.v[k] = invert([k](const ProfileValue& v) { return v.v_hat[k]; });
  ref.w = invert([](const ProfileValue& v) { return v.w_hat; });
  ref.p = invert([](const ProfileValue& v) { return v.p_hat; });
  const double err = relative_l2(num, ref);
  r.checks.push_back({"talbot_agreement", err < s.evolve_tolerance,
                      "relative L2 at t = " + sci(t) + ": " + sci(err) + " (tolerance " + sci(s.evolve_tolerance) + ")"});
}

void run_wedge(const Scenario& s, RunResult& r, Output& out) {
  const ModelParams& p = need_params(s);
  WedgeGrid g;
  g.nx = s.wedge_nx;
  g.my = s.wedge_my;
  g.mz = s.wedge_mz;
  g.lx = s.wedge_lx;
  g.ly = s.wedge_ly;
  g.lz = s.wedge_lz;
  std::mt19937_64 rng(s.rng_seed);
  std::normal_distribution<double> n01;
  FaceData d = zero_face_data(g);
  for (NdArray* a : {&d.u, &d.v, &d.w})
    for (auto& x : a->data) x = cplx(n01(rng), n01(rng));
  for (std::size_t ix = 0; ix < g.nx; ++ix) {
    d.v.data[ix * (g.my + 1)] = 0.0;
    d.v.data[ix * (g.my + 1) + g.my] = 0.0;
  }
  const bool inflow = s.wedge_path == "inflow";
  if (!inflow && s.wedge_path != "outflow") throw Error(ErrorKind::ParseError, "wedge.path must be inflow or outflow");
  if (inflow || s.bc == BoundaryCondition::TDO) {
    const NdArray e = extend(d.w, 1, Parity::Even);
    cplx mean = 0.0;
    for (auto x : e.data) mean += x;
    mean /= double(e.data.size());
    for (auto& x : d.w.data) x -= mean;
  }
  const WedgeField f = inflow ? solve_wedge_inflow(p, d, zero_wall_data(g), g, s.lambda)
                              : solve_wedge_outflow(p, s.bc, d, g, s.lambda);
  out.write("wedge.csv", wedge_field_csv(f));
  std::ostringstream rep;
  rep << "path " << s.wedge_path << '\n'
      << "bc " << (inflow ? "Dirichlet" : to_string(s.bc)) << '\n'
      << "parity_error " << fmt_double(f.parity_error) << '\n'
      << "wall_residual " << fmt_double(f.wall_residual) << '\n';
  out.write("parity.txt", rep.str());
  r.checks.push_back({"wall_rows", f.wall_residual < 1e-8, "max wall residual " + sci(f.wall_residual)});
  r.checks.push_back({"parity", f.parity_error < 1e-12, "max parity defect " + sci(f.parity_error)});
}

void run_verify(const Scenario& s, RunResult& r, Output& out) {
  acceptance::Options opt;
  opt.seed = s.rng_seed;
  std::ostringstream csv;
  csv << "criterion,name,pass,detail\n";
  for (int id : s.verify_criteria) {
    const acceptance::CriterionResult c = acceptance::run_criterion(id, opt);
    std::string detail = c.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    csv << c.id << ',' << c.name << ',' << (c.pass ? 1 : 0) << ',' << detail << '\n';
    r.checks.push_back({"criterion_" + std::to_string(c.id) + " " + c.name, c.pass,
                        c.detail + " (" + sci(c.seconds) + " s)"});
  }
  out.write("acceptance.csv", csv.str());
}

}  // namespace

RunResult run(const Scenario& s) {
  RunResult r;
  Output out(s, r);
  switch (s.command) {
    case Command::Symbols: run_symbols(s, r, out); break;
    case Command::Resolve: run_resolve(s, r, out); break;
    case Command::Evolve: run_evolve(s, r, out); break;
    case Command::Wedge: run_wedge(s, r, out); break;
    case Command::Verify: run_verify(s, r, out); break;
  }
  std::ostringstream sum;
  sum << "command " << to_string(s.command) << '\n';
  for (const auto& c : r.checks) sum << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  sum << (r.pass() ? "result PASS" : "result FAIL") << '\n';
  out.write("summary.txt", sum.str());
  return r;
}

}  // namespace stokes_outflow::cli
