#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "scenario.hpp"
#include "stokes_outflow/parallel.hpp"

namespace so = stokes_outflow;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

/// Collects --key=value and --key value pairs left over by the option parser.
bool collect_overrides(const std::vector<std::string>& rest, std::map<std::string, std::string>& out) {
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const std::string& a = rest[i];
    if (a.rfind("--", 0) != 0 || a.size() <= 2) {
      std::cerr << "error: unexpected argument '" << a << "'\n";
      return false;
    }
    const std::string body = a.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      out[body.substr(0, eq)] = body.substr(eq + 1);
    } else if (i + 1 < rest.size()) {
      out[body] = rest[++i];
    } else {
      std::cerr << "error: missing value for --" << body << '\n';
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-space Stokes resolvent, symbol and wedge toolkit"};
  app.allow_extras();
  std::string command, config;
  int threads = 0;
  app.add_option("command", command, "symbols | resolve | evolve | wedge | verify")->required();
  app.add_option("--config", config, "Scenario file with key = value lines")->required();
  app.add_option("--threads", threads, "Worker thread cap (overrides STOKES_OUTFLOW_THREADS)");
  app.footer("Any scenario key can be overridden with --key=value, e.g. --params.alpha=0.5.");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  std::map<std::string, std::string> overrides;
  if (!collect_overrides(app.remaining(), overrides)) return kExitUsage;
  overrides["command"] = command;
  if (threads > 0) so::set_worker_threads(threads);

  std::ifstream in(config);
  if (!in) {
    std::cerr << "error: cannot read config '" << config << "'\n";
    return kExitUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  so::cli::Scenario scenario;
  try {
    scenario = so::cli::parse_scenario(buf.str(), overrides);
  } catch (const so::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const so::cli::RunResult result = so::cli::run(scenario);
    for (const auto& c : result.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    if (const auto* f = result.first_failure()) {
      std::cerr << "first failing check: " << f->name << '\n';
      return kExitCheckFailure;
    }
    return kExitPass;
  } catch (const so::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == so::ErrorKind::ParseError ? kExitUsage : kExitCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}
