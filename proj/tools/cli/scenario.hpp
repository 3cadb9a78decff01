#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stokes_outflow/core.hpp"

namespace stokes_outflow::cli {

enum class Command { Symbols, Resolve, Evolve, Wedge, Verify };

const char* to_string(Command c);
Command parse_command(const std::string& name);

/// A validated run description. Physics parameters have no defaults.
struct Scenario {
  Command command = Command::Verify;
  std::optional<ModelParams> params;
  BoundaryCondition bc = BoundaryCondition::NDO;
  cplx lambda = 1.0;
  std::uint64_t rng_seed = 1;
  std::string output_dir = "stokes_outflow_out";

  // symbols
  double theta = 0.7853981633974483;
  std::size_t n_samples = 10000;
  std::string selector = "all";

  // resolve / wedge data
  std::vector<std::size_t> grid_n = {32};
  std::vector<double> grid_length = {6.283185307179586};
  std::vector<double> y_levels = {0.0, 0.5, 1.0};
  std::string data_kind = "harmonic";
  std::string data_component = "w";
  std::vector<long> data_index = {1};
  std::vector<double> data_center = {3.141592653589793};
  double data_width = 0.5;
  double data_amplitude = 1.0;

  // evolve
  std::vector<double> mode_xi = {1.0};
  double time_horizon = 1.0;
  std::size_t time_steps = 1000;
  std::size_t time_record_every = 100;
  std::size_t ygrid_points = 1501;
  double ygrid_y_max = 30.0;
  double evolve_tolerance = 1e-2;

  // wedge
  std::string wedge_path = "outflow";
  std::size_t wedge_nx = 16, wedge_my = 16, wedge_mz = 16;
  double wedge_lx = 6.283185307179586, wedge_ly = 3.141592653589793, wedge_lz = 4.0;

  // verify
  std::vector<int> verify_criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9};
};

/// Parses `key = value` lines (`#` starts a comment) and applies `overrides`
/// (flag values, which take precedence). Throws ParseError with the line
/// number, UnknownKey for keys outside the schema, and CPViolation for
/// invalid physics parameters.
Scenario parse_scenario(const std::string& text, const std::map<std::string, std::string>& overrides = {});

/// Keys accepted by parse_scenario.
std::vector<std::string> known_keys();

}  // namespace stokes_outflow::cli
