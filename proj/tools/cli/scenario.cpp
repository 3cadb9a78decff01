#include "scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <sstream>

namespace stokes_outflow::cli {

namespace {

struct Entry {
  std::string value;
  std::string where;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const Entry& e, const std::string& why) {
  throw Error(ErrorKind::ParseError, e.where + ": " + key + " = '" + e.value + "': " + why);
}

double to_double(const std::string& key, const Entry& e, const std::string& text) {
  double v = 0.0;
  const std::string t = trim(text);
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) bad_value(key, e, "expected a number");
  return v;
}

long to_long(const std::string& key, const Entry& e, const std::string& text) {
  long v = 0;
  const std::string t = trim(text);
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) bad_value(key, e, "expected an integer");
  return v;
}

std::size_t to_count(const std::string& key, const Entry& e, const std::string& text) {
  const long v = to_long(key, e, text);
  if (v < 0) bad_value(key, e, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

using Setter = std::function<void(Scenario&, const std::string&, const Entry&)>;

template <class T, class F>
Setter list_setter(std::vector<T> Scenario::*field, F conv) {
  return [field, conv](Scenario& s, const std::string& k, const Entry& e) {
    std::vector<T> v;
    for (const auto& item : split_list(e.value)) v.push_back(static_cast<T>(conv(k, e, item)));
    if (v.empty()) bad_value(k, e, "expected a non-empty list");
    s.*field = v;
  };
}

Setter real(double Scenario::*field) {
  return [field](Scenario& s, const std::string& k, const Entry& e) { s.*field = to_double(k, e, e.value); };
}

Setter count(std::size_t Scenario::*field) {
  return [field](Scenario& s, const std::string& k, const Entry& e) { s.*field = to_count(k, e, e.value); };
}

Setter text(std::string Scenario::*field) {
  return [field](Scenario& s, const std::string&, const Entry& e) { s.*field = e.value; };
}

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> m = {
      {"rng_seed",
       [](Scenario& s, const std::string& k, const Entry& e) {
         s.rng_seed = static_cast<std::uint64_t>(to_count(k, e, e.value));
       }},
      {"output.dir", text(&Scenario::output_dir)},
      {"bc",
       [](Scenario& s, const std::string& k, const Entry& e) {
         try {
           s.bc = parse_boundary_condition(e.value);
         } catch (const Error&) {
           bad_value(k, e, "unknown boundary condition");
         }
       }},
      {"lambda.re",
       [](Scenario& s, const std::string& k, const Entry& e) { s.lambda.real(to_double(k, e, e.value)); }},
      {"lambda.im",
       [](Scenario& s, const std::string& k, const Entry& e) { s.lambda.imag(to_double(k, e, e.value)); }},
      {"symbols.theta", real(&Scenario::theta)},
      {"symbols.n_samples", count(&Scenario::n_samples)},
      {"symbols.selector", text(&Scenario::selector)},
      {"grid.n", list_setter(&Scenario::grid_n, to_count)},
      {"grid.length", list_setter(&Scenario::grid_length, to_double)},
      {"grid.y_levels", list_setter(&Scenario::y_levels, to_double)},
      {"data.kind", text(&Scenario::data_kind)},
      {"data.component", text(&Scenario::data_component)},
      {"data.index", list_setter(&Scenario::data_index, to_long)},
      {"data.center", list_setter(&Scenario::data_center, to_double)},
      {"data.width", real(&Scenario::data_width)},
      {"data.amplitude", real(&Scenario::data_amplitude)},
      {"mode.xi", list_setter(&Scenario::mode_xi, to_double)},
      {"time.horizon", real(&Scenario::time_horizon)},
      {"time.steps", count(&Scenario::time_steps)},
      {"time.record_every", count(&Scenario::time_record_every)},
      {"ygrid.points", count(&Scenario::ygrid_points)},
      {"ygrid.y_max", real(&Scenario::ygrid_y_max)},
      {"evolve.tolerance", real(&Scenario::evolve_tolerance)},
      {"wedge.path", text(&Scenario::wedge_path)},
      {"wedge.nx", count(&Scenario::wedge_nx)},
      {"wedge.my", count(&Scenario::wedge_my)},
      {"wedge.mz", count(&Scenario::wedge_mz)},
      {"wedge.lx", real(&Scenario::wedge_lx)},
      {"wedge.ly", real(&Scenario::wedge_ly)},
      {"wedge.lz", real(&Scenario::wedge_lz)},
      {"verify.criteria", list_setter(&Scenario::verify_criteria, to_long)},
  };
  return m;
}

const std::vector<std::string> kPhysicsKeys = {"params.alpha", "params.reynolds", "params.v_out", "params.epsilon"};

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Symbols: return "symbols";
    case Command::Resolve: return "resolve";
    case Command::Evolve: return "evolve";
    case Command::Wedge: return "wedge";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  const std::string s = lower(trim(name));
  for (auto c : {Command::Symbols, Command::Resolve, Command::Evolve, Command::Wedge, Command::Verify})
    if (s == to_string(c)) return c;
  throw Error(ErrorKind::ParseError, "unknown command '" + name + "'");
}

std::vector<std::string> known_keys() {
  std::vector<std::string> k = {"command", "params.wall_friction"};
  k.insert(k.end(), kPhysicsKeys.begin(), kPhysicsKeys.end());
  for (const auto& [name, _] : schema()) k.push_back(name);
  std::sort(k.begin(), k.end());
  return k;
}

Scenario parse_scenario(const std::string& text, const std::map<std::string, std::string>& overrides) {
  const std::vector<std::string> keys = known_keys();
  auto known = [&](const std::string& k) { return std::binary_search(keys.begin(), keys.end(), k); };

  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::ParseError, where + ": empty key");
    if (value.empty()) throw Error(ErrorKind::ParseError, where + ": empty value for '" + key + "'");
    if (!known(key)) throw Error(ErrorKind::UnknownKey, where + ": unknown key '" + key + "'");
    if (entries.count(key)) throw Error(ErrorKind::ParseError, where + ": duplicate key '" + key + "'");
    entries[key] = {value, where};
  }
  for (const auto& [key, value] : overrides) {
    if (!known(key)) throw Error(ErrorKind::UnknownKey, "flag --" + key + ": unknown key");
    entries[key] = {value, "flag --" + key};
  }

  Scenario s;
  const auto cmd = entries.find("command");
  if (cmd == entries.end()) throw Error(ErrorKind::ParseError, "missing required key 'command'");
  try {
    s.command = parse_command(cmd->second.value);
  } catch (const Error&) {
    bad_value("command", cmd->second, "expected symbols, resolve, evolve, wedge or verify");
  }

  for (const auto& [key, entry] : entries) {
    const auto it = schema().find(key);
    if (it != schema().end()) it->second(s, key, entry);
  }

  std::size_t present = 0;
  for (const auto& k : kPhysicsKeys) present += entries.count(k);
  if (present > 0 || s.command != Command::Verify) {
    for (const auto& k : kPhysicsKeys)
      if (!entries.count(k)) throw Error(ErrorKind::ParseError, "missing required key '" + k + "'");
    auto get = [&](const std::string& k) { return to_double(k, entries[k], entries[k].value); };
    ModelParams p = make_params(get("params.alpha"), get("params.reynolds"), get("params.v_out"),
                                get("params.epsilon"));
    if (entries.count("params.wall_friction")) {
      p.wall_friction = get("params.wall_friction");
      if (p.wall_friction < 0.0) throw Error(ErrorKind::CPViolation, "params.wall_friction must be >= 0");
    }
    s.params = p;
  }

  if (s.grid_n.size() != s.grid_length.size())
    throw Error(ErrorKind::ParseError, "grid.n and grid.length must have the same length");
  for (int c : s.verify_criteria)
    if (c < 1 || c > 9) throw Error(ErrorKind::ParseError, "verify.criteria entries must be in 1..9");
  return s;
}

}  // namespace stokes_outflow::cli
