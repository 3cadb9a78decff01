#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stokes_outflow::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured quantities and the bounds they were compared against.
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = 20240601;
  /// Path of the CLI binary used by the end-to-end criterion.
  std::string cli_path;
  /// Scenario config for the end-to-end criterion.
  std::string verify_config;
};

inline constexpr int kCriteria = 10;

/// Runs one acceptance criterion (1..10).
CriterionResult run_criterion(int id, const Options& opt);

/// Runs criteria 1..9 in order (the self-contained set).
std::vector<CriterionResult> run_core_criteria(const Options& opt);

/// "PASS [n] name: detail (t s)".
std::string format_line(const CriterionResult& r);

}  // namespace stokes_outflow::acceptance
