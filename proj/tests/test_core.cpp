#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "stokes_outflow/csv.hpp"
#include "stokes_outflow/parallel.hpp"
#include "support.hpp"

using namespace stokes_outflow;
using namespace stokes_outflow::test;

TEST_CASE("make_params derives kappa and sigma") {
  const ModelParams p = make_params(2.0, 4.0, 0.5, 0.1);
  CHECK(p.kappa == doctest::Approx(2.0 * 0.5 + 0.25));
  CHECK(p.sigma == doctest::Approx(2.0 * 0.5 + 0.5));
  CHECK(p.wall_friction == 0.0);
}

TEST_CASE("make_params rejects invalid physics") {
  CHECK(error_kind_of([] { make_params(0.0, 1.0, 0.0, 0.0); }) == ErrorKind::CPViolation);
  CHECK(error_kind_of([] { make_params(-1.0, 1.0, 0.0, 0.0); }) == ErrorKind::CPViolation);
  CHECK(error_kind_of([] { make_params(1.0, 0.0, 0.0, 0.0); }) == ErrorKind::CPViolation);
  CHECK(error_kind_of([] { make_params(1.0, 1.0, 0.0, -0.1); }) == ErrorKind::CPViolation);
  CHECK(error_kind_of([] { make_params(1.0, 1.0, -2.0, 0.0); }) == ErrorKind::CPViolation);
  CHECK(error_kind_of([] { make_params(1.0, 1.0, std::nan(""), 0.0); }) == ErrorKind::CPViolation);
}

TEST_CASE("make_mode examples") {
  const ModelParams p1 = make_params(1.0, 1.0, 0.0, 1.0);
  CHECK(std::abs(make_mode(p1, 0.0, {0.0}).omega - 1.0) < 1e-15);
  CHECK(std::abs(make_mode(p1, 0.0, {std::sqrt(3.0)}).omega - 2.0) < 1e-15);
  const ModelParams p0 = make_params(1.0, 1.0, 0.0, 0.0);
  CHECK(std::abs(make_mode(p0, cplx(3.0, 4.0), {0.0}).omega - cplx(2.0, 1.0)) < 1e-15);
}

TEST_CASE("make_mode rejects the branch cut") {
  const ModelParams p = make_params(1.0, 1.0, 0.0, 0.5);
  CHECK(error_kind_of([&] { make_mode(p, -0.5, {1.0}); }) == ErrorKind::BranchCut);
  CHECK(error_kind_of([&] { make_mode(p, -3.0, {1.0}); }) == ErrorKind::BranchCut);
  CHECK_NOTHROW(make_mode(p, cplx(-3.0, 1e-9), {1.0}));
}

TEST_CASE("property: omega squared identity and sector argument bound") {
  Rng rng(11);
  const double theta = kPi / 4.0;
  for (int i = 0; i < 2000; ++i) {
    const ModelParams p = random_params(rng);
    const cplx lambda = sector_lambda(rng, -6.0, 6.0, theta);
    const Mode m = make_mode(p, lambda, random_xi(rng, 1 + i % 2, -6.0, 6.0));
    const cplx w2 = m.lambda_eps + m.zeta_abs * m.zeta_abs;
    REQUIRE(std::abs(m.omega * m.omega - w2) <= 1e-14 * std::abs(w2) * 4.0);
    REQUIRE(m.omega.real() > 0.0);
    REQUIRE(std::abs(std::arg(m.omega)) < (kPi - theta) / 2.0);
    REQUIRE(m.dim() == m.xi.size() + 1);
  }
}

TEST_CASE("boundary condition names round-trip") {
  for (auto bc : {BoundaryCondition::TDO, BoundaryCondition::NDO, BoundaryCondition::FDO,
                  BoundaryCondition::Dirichlet, BoundaryCondition::Navier, BoundaryCondition::Neumann})
    CHECK(parse_boundary_condition(to_string(bc)) == bc);
  CHECK(parse_boundary_condition("fdo") == BoundaryCondition::FDO);
  CHECK(error_kind_of([] { parse_boundary_condition("robin"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("error messages carry the kind") {
  const Error e(ErrorKind::MissingTrace, "u_x");
  CHECK(e.kind() == ErrorKind::MissingTrace);
  CHECK(std::string(e.what()).find("MissingTrace") == 0);
}

TEST_CASE("fmt_double round-trips") {
  for (double x : {0.0, 1.0, -2.5, 1.0 / 3.0, 6.02214076e23, 5e-324}) CHECK(std::strtod(fmt_double(x).c_str(), nullptr) == x);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 37) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  set_worker_threads(1);
  CHECK(worker_threads() == 1);
  set_worker_threads(0);
  CHECK(worker_threads() >= 1);
}
