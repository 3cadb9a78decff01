#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "scenario.hpp"

using namespace stokes_outflow;
using namespace stokes_outflow::cli;

namespace {

const std::string kPhysics =
    "params.alpha = 1.0\n"
    "params.reynolds = 2.0\n"
    "params.v_out = 0.5\n"
    "params.epsilon = 0.1\n";

std::string message_of(const std::string& text, ErrorKind* kind = nullptr,
                       const std::map<std::string, std::string>& overrides = {}) {
  try {
    parse_scenario(text, overrides);
  } catch (const Error& e) {
    if (kind) *kind = e.kind();
    return e.what();
  }
  return "";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("a complete scenario parses") {
  const Scenario s = parse_scenario("command = resolve\n" + kPhysics +
                                    "bc = FDO  # outflow\n"
                                    "lambda.re = 0.5\n"
                                    "lambda.im = -1\n"
                                    "grid.n = 16, 8\n"
                                    "grid.length = 6.0, 3.0\n");
  CHECK(s.command == Command::Resolve);
  REQUIRE(s.params.has_value());
  CHECK(s.params->reynolds == 2.0);
  CHECK(s.params->kappa == doctest::Approx(0.5 + 0.5));
  CHECK(s.bc == BoundaryCondition::FDO);
  CHECK(s.lambda == cplx(0.5, -1.0));
  CHECK(s.grid_n == std::vector<std::size_t>{16, 8});
}

TEST_CASE("flags override file values") {
  const Scenario s = parse_scenario("command = symbols\n" + kPhysics, {{"params.alpha", "3.5"}, {"symbols.n_samples", "12"}});
  CHECK(s.params->alpha == 3.5);
  CHECK(s.n_samples == 12);
}

TEST_CASE("unknown keys are reported with their line") {
  ErrorKind kind{};
  const std::string msg = message_of("command = symbols\n" + kPhysics + "params.alhpa = 2\n", &kind);
  CHECK(kind == ErrorKind::UnknownKey);
  CHECK(msg.find("line 6") != std::string::npos);
  CHECK(msg.find("params.alhpa") != std::string::npos);
  message_of("command = symbols\n" + kPhysics, &kind, {{"grid.nn", "3"}});
  CHECK(kind == ErrorKind::UnknownKey);
}

TEST_CASE("physics parameters are strict") {
  ErrorKind kind{};
  message_of("command = resolve\nparams.alpha = -1\nparams.reynolds = 1\nparams.v_out = 0\nparams.epsilon = 0\n", &kind);
  CHECK(kind == ErrorKind::CPViolation);
  const std::string msg = message_of("command = resolve\nparams.alpha = 1\nparams.reynolds = 1\nparams.v_out = 0\n", &kind);
  CHECK(kind == ErrorKind::ParseError);
  CHECK(msg.find("params.epsilon") != std::string::npos);
  CHECK_NOTHROW(parse_scenario("command = verify\n"));
}

TEST_CASE("malformed lines") {
  ErrorKind kind{};
  CHECK(message_of("command = symbols\n" + kPhysics + "bc\n", &kind).find("line 6") != std::string::npos);
  CHECK(kind == ErrorKind::ParseError);
  message_of("command = symbols\n" + kPhysics + "params.alpha = 2\n", &kind);
  CHECK(kind == ErrorKind::ParseError);
  message_of("command = symbols\n" + kPhysics + "symbols.n_samples = many\n", &kind);
  CHECK(kind == ErrorKind::ParseError);
  message_of("command = fly\n" + kPhysics, &kind);
  CHECK(kind == ErrorKind::ParseError);
  message_of(kPhysics, &kind);
  CHECK(kind == ErrorKind::ParseError);
  message_of("command = verify\nverify.criteria = 1, 12\n", &kind);
  CHECK(kind == ErrorKind::ParseError);
}

TEST_CASE("identical seeds give byte-identical output") {
  const auto root = std::filesystem::temp_directory_path() / "stokes_outflow_cli_test";
  std::filesystem::remove_all(root);
  std::string csv[2];
  for (int rep = 0; rep < 2; ++rep) {
    const auto dir = root / ("run" + std::to_string(rep));
    const Scenario s = parse_scenario("command = symbols\n" + kPhysics +
                                      "rng_seed = 42\nsymbols.n_samples = 500\noutput.dir = " + dir.string() + "\n");
    const RunResult r = cli::run(s);
    CHECK_FALSE(r.checks.empty());
    CHECK(std::filesystem::exists(dir / "summary.txt"));
    csv[rep] = slurp(dir / "symbols.csv");
  }
  CHECK_FALSE(csv[0].empty());
  CHECK(csv[0] == csv[1]);
  std::filesystem::remove_all(root);
}

TEST_CASE("resolve writes a field with passing checks") {
  const auto dir = std::filesystem::temp_directory_path() / "stokes_outflow_cli_resolve";
  std::filesystem::remove_all(dir);
  const Scenario s = parse_scenario("command = resolve\n" + kPhysics + "bc = NDO\ngrid.n = 16\ndata.kind = gaussian\noutput.dir = " +
                                    dir.string() + "\n");
  const RunResult r = run(s);
  CHECK(r.pass());
  const std::string csv = slurp(dir / "field.csv");
  CHECK(csv.rfind("# alpha=", 0) == 0);
  CHECK(csv.find("\nx1,y,u1_re,u1_im,") != std::string::npos);
  std::filesystem::remove_all(dir);
}
