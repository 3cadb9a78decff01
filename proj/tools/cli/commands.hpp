#pragma once

#include <string>
#include <vector>

#include "scenario.hpp"

namespace stokes_outflow::cli {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunResult {
  std::vector<Check> checks;
  /// Files written, relative to the output directory.
  std::vector<std::string> artifacts;

  bool pass() const;
  /// First failing check, or nullptr.
  const Check* first_failure() const;
};

/// Executes the scenario, writes its CSV artifacts and summary.txt into
/// scenario.output_dir, and returns the checks.
RunResult run(const Scenario& scenario);

}  // namespace stokes_outflow::cli
