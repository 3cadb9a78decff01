#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stokes_outflow/resolvent.hpp"
#include "stokes_outflow/scalar_kernels.hpp"
#include "stokes_outflow/symbols.hpp"
#include "support.hpp"

using namespace stokes_outflow;
using namespace stokes_outflow::test;

namespace {

const std::vector<BoundaryCondition> kConditions = {BoundaryCondition::TDO, BoundaryCondition::NDO,
                                                    BoundaryCondition::FDO, BoundaryCondition::Dirichlet};

ModeData combine(cplx a, const ModeData& d1, cplx b, const ModeData& d2) {
  ModeData d;
  for (std::size_t k = 0; k < d1.h_v.size(); ++k) d.h_v.push_back(a * d1.h_v[k] + b * d2.h_v[k]);
  d.h_w = a * d1.h_w + b * d2.h_w;
  return d;
}

double value_diff(const ProfileValue& x, const ProfileValue& y) {
  double m = std::max(std::abs(x.w_hat - y.w_hat), std::abs(x.p_hat - y.p_hat));
  for (std::size_t k = 0; k < x.v_hat.size(); ++k) m = std::max(m, std::abs(x.v_hat[k] - y.v_hat[k]));
  return m;
}

double value_scale(const ProfileValue& x) {
  double m = std::max(std::abs(x.w_hat), std::abs(x.p_hat));
  for (auto v : x.v_hat) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("property: mode residuals for every boundary condition") {
  Rng rng(31);
  for (auto bc : kConditions) {
    for (int i = 0; i < 300; ++i) {
      const ModelParams p = random_params(rng);
      const Mode m = make_mode(p, sector_lambda(rng, -2.0, 2.0), random_xi(rng, 1 + i % 2, -1.0, 1.0));
      const ModeData d = random_mode_data(rng, m.xi.size());
      const ModeProfile prof = solve_mode(p, m, bc, d);
      const ModeResidual r = residual_mode(prof, bc, d, default_residual_samples(m));
      const double tol = 1e-10 * (1.0 + data_norm(d));
      INFO(to_string(bc), " sample ", i);
      REQUIRE(r.momentum_res < tol);
      REQUIRE(r.div_res < tol);
      REQUIRE(r.bc_res < tol);
    }
  }
}

TEST_CASE("property: linearity") {
  Rng rng(32);
  for (auto bc : kConditions) {
    for (int i = 0; i < 100; ++i) {
      const ModelParams p = random_params(rng);
      const Mode m = make_mode(p, sector_lambda(rng, -2.0, 2.0), random_xi(rng, 2, -1.0, 1.0));
      const ModeData d1 = random_mode_data(rng, 2), d2 = random_mode_data(rng, 2);
      const cplx a = random_cplx(rng), b = random_cplx(rng);
      const ModeProfile s = solve_mode(p, m, bc, combine(a, d1, b, d2));
      const ModeProfile s1 = solve_mode(p, m, bc, d1), s2 = solve_mode(p, m, bc, d2);
      for (double y : default_residual_samples(m)) {
        const ProfileValue v = eval_profile(s, y), v1 = eval_profile(s1, y), v2 = eval_profile(s2, y);
        ProfileValue lin = v1;
        for (std::size_t k = 0; k < lin.v_hat.size(); ++k) lin.v_hat[k] = a * v1.v_hat[k] + b * v2.v_hat[k];
        lin.w_hat = a * v1.w_hat + b * v2.w_hat;
        lin.p_hat = a * v1.p_hat + b * v2.p_hat;
        const double scale = (std::abs(a) * value_scale(v1) + std::abs(b) * value_scale(v2)) + 1e-300;
        REQUIRE(value_diff(v, lin) < 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("property: pressure traces match the symbols") {
  Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const ModelParams p = random_params(rng);
    const Mode m = make_mode(p, sector_lambda(rng, -2.0, 2.0), random_xi(rng, 1 + i % 2, -1.0, 1.0));
    ModeData d;
    d.h_v.assign(m.xi.size(), 0.0);
    d.h_w = random_cplx(rng);
    const ProfileValue ndo = eval_profile(solve_mode(p, m, BoundaryCondition::NDO, d), 0.0);
    const ProfileValue fdo = eval_profile(solve_mode(p, m, BoundaryCondition::FDO, d), 0.0);
    const ProfileValue tdo = eval_profile(solve_mode(p, m, BoundaryCondition::TDO, d), 0.0);
    REQUIRE(rel(ndo.p_hat, ndo_symbols(p, m).pi_sym * d.h_w) < 1e-10);
    REQUIRE(rel(fdo.p_hat, fdo_symbols(p, m).pi_sym * d.h_w) < 1e-10);
    REQUIRE(rel(-tdo.dy_p_hat, tdo_components(p, m).M * d.h_w) < 1e-10);
  }
}

TEST_CASE("property: normal-condition composition of scalar kernels") {
  Rng rng(34);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p = random_params(rng);
    const Mode m = make_mode(p, sector_lambda(rng, -2.0, 2.0), random_xi(rng, 1 + i % 2, -1.0, 1.0));
    const ModeData d = random_mode_data(rng, m.xi.size());
    const ProfileValue direct = eval_profile(solve_mode(p, m, BoundaryCondition::NDO, d), 0.0);
    const ProfileValue comp = compose_ndo_traces(p, m, d);
    REQUIRE(value_diff(direct, comp) < 1e-10 * value_scale(direct));
  }
}

TEST_CASE("perturbed amplitudes violate only the boundary rows") {
  const ModelParams p = make_params(0.8, 3.0, 0.4, 0.2);
  const Mode m = make_mode(p, cplx(0.7, 0.3), {1.3, -0.4});
  const ModeData d{{cplx(0.3, -0.2), cplx(-0.5, 0.1)}, cplx(1.0, 0.4)};
  for (auto bc : kConditions) {
    const ModeProfile s = solve_mode(p, m, bc, d);
    const ModeProfile bad = profile_from_amplitudes(p, m, s.tau_v, s.tau_w * 1.01);
    const ModeResidual r = residual_mode(bad, bc, d, default_residual_samples(m));
    INFO(to_string(bc));
    CHECK(r.momentum_res < 1e-10);
    CHECK(r.div_res < 1e-10);
    CHECK(r.bc_res > 1e-3 * data_norm(d));
  }
}

TEST_CASE("zero data gives the zero profile") {
  const ModelParams p = make_params(1.0, 1.0, 0.0, 0.5);
  const Mode m = make_mode(p, 1.0, {2.0});
  const ModeData d{{0.0}, 0.0};
  for (auto bc : kConditions) {
    const ModeProfile s = solve_mode(p, m, bc, d);
    CHECK(value_scale(eval_profile(s, 0.3)) == 0.0);
    const ModeResidual r = residual_mode(s, bc, d, default_residual_samples(m));
    CHECK(r.momentum_res == 0.0);
    CHECK(r.bc_res == 0.0);
  }
}

TEST_CASE("profiles decay away from the boundary") {
  const ModelParams p = make_params(1.0, 2.0, 0.3, 0.1);
  const Mode m = make_mode(p, cplx(0.5, 1.0), {1.0});
  const ModeProfile s = solve_mode(p, m, BoundaryCondition::FDO, {{1.0}, 1.0});
  CHECK(value_scale(eval_profile(s, 40.0)) < 1e-12 * value_scale(eval_profile(s, 0.0)));
}

TEST_CASE("zero tangential mode") {
  const ModelParams p = make_params(1.0, 1.0, 0.0, 0.5);
  const Mode m = make_mode(p, 1.0, {0.0});
  CHECK(error_kind_of([&] { solve_mode(p, m, BoundaryCondition::NDO, {{1.0}, 0.0}); }) ==
        ErrorKind::ZeroTangentialMode);
  CHECK(error_kind_of([&] { solve_zero_mode(p, m, BoundaryCondition::TDO, {{0.0}, 1.0}); }) ==
        ErrorKind::ZeroModeIncompatible);
  CHECK(error_kind_of([&] { solve_zero_mode(p, m, BoundaryCondition::Dirichlet, {{0.0}, 1.0}); }) ==
        ErrorKind::ZeroModeIncompatible);
  for (auto bc : kConditions) {
    const ModeData d{{cplx(0.4, 0.2)}, bc == BoundaryCondition::NDO || bc == BoundaryCondition::FDO ? 0.3 : 0.0};
    const ModeProfile s = solve_any_mode(p, m, bc, d);
    const ModeResidual r = residual_mode(s, bc, d, default_residual_samples(m));
    INFO(to_string(bc));
    CHECK(r.momentum_res < 1e-12);
    CHECK(r.bc_res < 1e-12);
  }
}

TEST_CASE("single harmonic synthesis equals the mode profile") {
  const ModelParams p = make_params(1.0, 2.0, 0.5, 0.2);
  TangentialGrid g{{16}, {2.0 * kPi}};
  BoundaryField f = zero_boundary_field(g);
  const std::size_t k = 3;
  for (std::size_t j = 0; j < g.size(); ++j) f.h_w[j] = std::exp(cplx(0.0, double(k) * g.coord(0, j)));
  const cplx lambda(0.5, 0.5);
  const GridField field = solve_field(p, BoundaryCondition::NDO, f, lambda, {0.0, 0.7});
  const Mode m = make_mode(p, lambda, {g.wavenumber(0, k)});
  const ModeProfile s = solve_mode(p, m, BoundaryCondition::NDO, {{0.0}, 1.0});
  for (std::size_t yi = 0; yi < 2; ++yi) {
    const ProfileValue v = eval_profile(s, field.y[yi]);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const cplx e = std::exp(cplx(0.0, double(k) * g.coord(0, j)));
      const std::size_t idx = yi * g.size() + j;
      CHECK(std::abs(field.w[idx] - v.w_hat * e) < 1e-12);
      CHECK(std::abs(field.p[idx] - v.p_hat * e) < 1e-12);
      CHECK(std::abs(field.v[0][idx] - v.v_hat[0] * e) < 1e-12);
    }
  }
}

TEST_CASE("real boundary data gives a real divergence-free field") {
  const ModelParams p = make_params(1.0, 1.0, 0.2, 0.3);
  TangentialGrid g{{32}, {2.0 * kPi}};
  BoundaryField f = zero_boundary_field(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.coord(0, j);
    f.h_w[j] = std::exp(-4.0 * (x - kPi) * (x - kPi));
    f.h_v[0][j] = 0.2 * std::cos(2.0 * x) + 0.1 * std::sin(5.0 * x);
  }
  f.h_w[0] = 0.0;
  double mean = 0.0;
  for (auto v : f.h_w) mean += v.real();
  for (auto& v : f.h_w) v -= mean / double(g.size());
  for (auto bc : kConditions) {
    const GridField field = solve_field(p, bc, f, 1.0, {0.0, 0.5});
    double imag = 0.0, div = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < field.w.size(); ++i) {
      imag = std::max({imag, std::abs(field.w[i].imag()), std::abs(field.p[i].imag()),
                       std::abs(field.v[0][i].imag())});
      div = std::max(div, std::abs(field.div[i]));
      scale = std::max(scale, std::abs(field.w[i]));
    }
    INFO(to_string(bc));
    CHECK(imag < 1e-12 * scale);
    CHECK(div < 1e-8 * scale);
  }
}

TEST_CASE("nonzero mean normal data is rejected where the mean is forced") {
  const ModelParams p = make_params(1.0, 1.0, 0.0, 0.5);
  TangentialGrid g{{8}, {2.0 * kPi}};
  BoundaryField f = zero_boundary_field(g);
  for (auto& v : f.h_w) v = 1.0;
  CHECK(error_kind_of([&] { solve_spectrum(p, BoundaryCondition::TDO, f, 1.0); }) ==
        ErrorKind::ZeroModeIncompatible);
  CHECK_NOTHROW(solve_spectrum(p, BoundaryCondition::NDO, f, 1.0));
}
