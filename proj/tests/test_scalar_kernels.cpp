#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stokes_outflow/scalar_kernels.hpp"
#include "stokes_outflow/symbols.hpp"
#include "support.hpp"

using namespace stokes_outflow;
using namespace stokes_outflow::test;

TEST_CASE("property: heat kernel with a dynamic row") {
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const double ab = log_uniform(rng, -1.0, 1.0), bb = log_uniform(rng, -1.0, 1.0);
    const double mu = log_uniform(rng, -1.0, 1.0), eps = uniform(rng, 0.0, 1.0);
    const cplx lambda = sector_lambda(rng, -2.0, 2.0);
    const RVec xi = random_xi(rng, 1 + i % 2, -1.0, 1.0);
    const cplx h = random_cplx(rng);
    const ScalarModeProfile u = heat_dbc_mode(ab, bb, mu, eps, lambda, xi, h);
    const double x2 = xi.size() == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
    const cplx w2 = eps + lambda + mu * x2;
    REQUIRE(u.decay_rate.real() > 0.0);
    REQUIRE(u.kind == ScalarKind::Heat);
    for (double y : {0.0, 0.3, 1.7}) {
      const cplx ode = w2 * u.value(y) - mu * u.dyy(y);
      REQUIRE(std::abs(ode) < 1e-12 * (std::abs(w2 * u.value(y)) + 1e-300) + 1e-300);
    }
    const cplx row = ab * (eps + lambda) * u.value(0.0) - bb * u.dy(0.0);
    REQUIRE(rel(row, h) < 1e-12);
  }
}

TEST_CASE("heat Dirichlet kernel") {
  const ScalarModeProfile u = heat_dirichlet_mode(0.5, 0.1, cplx(1.0, 2.0), {1.5}, cplx(2.0, -1.0));
  CHECK(std::abs(u.value(0.0) - cplx(2.0, -1.0)) < 1e-15);
  const cplx w2 = 0.1 + cplx(1.0, 2.0) + 0.5 * 2.25;
  CHECK(std::abs(w2 * u.value(0.8) - 0.5 * u.dyy(0.8)) < 1e-12);
  CHECK(u.decay_rate.real() > 0.0);
  CHECK(error_kind_of([] { heat_dirichlet_mode(0.0, 0.1, 1.0, {1.0}, 1.0); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind_of([] { heat_dirichlet_mode(1.0, 0.0, -1.0, {1.0}, 1.0); }) == ErrorKind::BranchCut);
}

TEST_CASE("Laplace kernels") {
  const ScalarModeProfile d = laplace_dirichlet_mode({2.0}, 1.0);
  CHECK(std::abs(d.value(0.0) - 1.0) < 1e-15);
  CHECK(d.kind == ScalarKind::Laplace);
  for (double y : {0.0, 0.4, 2.0}) CHECK(std::abs(4.0 * d.value(y) - d.dyy(y)) < 1e-12);
  CHECK(std::abs(laplace_dirichlet_mode({3.0, 4.0}, 0.0).value(0.5)) == 0.0);

  const ScalarModeProfile n = laplace_neumann_mode({3.0, 4.0}, 5.0);
  CHECK(std::abs(n.value(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(-n.dy(0.0) - 5.0) < 1e-12);
  CHECK(std::abs(laplace_neumann_mode({1.0}, 0.0).value(0.0)) == 0.0);

  CHECK(error_kind_of([] { laplace_dirichlet_mode({0.0}, 1.0); }) == ErrorKind::ZeroTangentialMode);
  CHECK(error_kind_of([] { laplace_neumann_mode({0.0, 0.0}, 1.0); }) == ErrorKind::ZeroTangentialMode);
}

TEST_CASE("property: composition with reduced data reproduces the Pi trace") {
  Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    const ModelParams p = random_params(rng);
    const Mode m = make_mode(p, sector_lambda(rng, -2.0, 2.0), random_xi(rng, 1 + i % 2, -1.0, 1.0));
    ModeData d;
    d.h_v.assign(m.xi.size(), 0.0);
    d.h_w = random_cplx(rng);
    const ProfileValue t = compose_ndo_traces(p, m, d);
    REQUIRE(rel(t.p_hat, ndo_symbols(p, m).pi_sym * d.h_w) < 1e-12);
    // The composed traces satisfy the normal dynamic row.
    const cplx row = p.alpha * m.lambda_eps * t.w_hat - p.sigma * t.dy_w_hat + t.p_hat;
    REQUIRE(rel(row, d.h_w) < 1e-10);
  }
}
