#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

namespace sa = stokes_outflow::acceptance;

/// acceptance [--criterion N] [--cli PATH] [--config PATH] [--seed S]
int main(int argc, char** argv) {
  sa::Options opt;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "missing value for " << a << '\n';
        std::exit(2);
      }
      return argv[++i];
    };
    if (a == "--criterion") only = std::stoi(next());
    else if (a == "--cli") opt.cli_path = next();
    else if (a == "--config") opt.verify_config = next();
    else if (a == "--seed") opt.seed = std::stoull(next());
    else {
      std::cerr << "unknown argument " << a << '\n';
      return 2;
    }
  }
  bool ok = true;
  for (int id = 1; id <= sa::kCriteria; ++id) {
    if (only != 0 && id != only) continue;
    const sa::CriterionResult r = sa::run_criterion(id, opt);
    std::cout << sa::format_line(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
