#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stokes_outflow/resolvent.hpp"
#include "stokes_outflow/timedomain.hpp"
#include "support.hpp"

using namespace stokes_outflow;
using namespace stokes_outflow::test;

namespace {

DiscreteProfile analytic_on_grid(const ModeProfile& prof, const YGrid& g) {
  DiscreteProfile d;
  d.v.assign(prof.mode.xi.size(), CVec(g.n_points));
  d.w.resize(g.n_points);
  d.p.resize(g.n_points);
  for (std::size_t j = 0; j < g.n_points; ++j) {
    d.y.push_back(g.at(j));
    const ProfileValue v = eval_profile(prof, g.at(j));
    for (std::size_t k = 0; k < d.v.size(); ++k) d.v[k][j] = v.v_hat[k];
    d.w[j] = v.w_hat;
    d.p[j] = v.p_hat;
  }
  return d;
}

}  // namespace

TEST_CASE("grids") {
  const YGrid g = make_ygrid(101, 10.0);
  CHECK(g.spacing == doctest::Approx(0.1));
  CHECK(g.at(100) == doctest::Approx(10.0));
  CHECK(error_kind_of([] { make_ygrid(8, 1.0); }) == ErrorKind::InvalidArgument);
  const TimeGrid t = make_timegrid(2.0, 40);
  CHECK(t.dt * double(t.n_steps) == doctest::Approx(2.0));
  CHECK(t.horizon() == doctest::Approx(2.0));
  CHECK(error_kind_of([] { make_timegrid(1.0, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Talbot inversion of known pairs") {
  for (double t : {0.1, 1.0, 3.0}) {
    // Roundoff amplified by exp(r t) limits the attainable accuracy to about 1e-10.
    CHECK(rel(talbot_invert([](cplx s) { return 1.0 / (s + 1.0); }, t), std::exp(-t)) < 1e-9);
    CHECK(rel(talbot_invert([](cplx s) { return 1.0 / (s * s); }, t), t) < 1e-9);
    CHECK(rel(talbot_invert([](cplx s) { return 1.0 / std::sqrt(s); }, t), 1.0 / std::sqrt(kPi * t)) < 1e-9);
  }
  CHECK(error_kind_of([] { talbot_invert([](cplx s) { return s; }, 0.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("finite-difference resolvent is second order") {
  const ModelParams p = make_params(1.0, 2.0, 0.5, 0.3);
  const Mode m = make_mode(p, cplx(1.0, 0.5), {1.2});
  const ModeData d{{cplx(0.4, -0.3)}, cplx(1.0, 0.2)};
  for (auto bc : {BoundaryCondition::TDO, BoundaryCondition::NDO, BoundaryCondition::FDO, BoundaryCondition::Dirichlet}) {
    const ModeProfile exact = solve_mode(p, m, bc, d);
    RVec err;
    for (std::size_t n : {251, 501, 1001}) {
      const YGrid g = resolving_ygrid(p, m, n, 16.0);
      err.push_back(relative_l2(fd_mode_bvp(p, m, bc, d, g), analytic_on_grid(exact, g)));
    }
    INFO(to_string(bc));
    CHECK(std::abs(std::log2(err[0] / err[1]) - 2.0) < 0.2);
    CHECK(std::abs(std::log2(err[1] / err[2]) - 2.0) < 0.2);
  }
  CHECK(error_kind_of([&] { fd_mode_bvp(p, make_mode(p, 1.0, {0.0}), BoundaryCondition::NDO, d, make_ygrid(32, 5.0)); }) ==
        ErrorKind::ZeroTangentialMode);
}

TEST_CASE("time stepping: zero data stays zero") {
  const ModelParams p = make_params(1.0, 1.0, 0.0, 0.5);
  const auto s = step_ibvp(p, {1.0}, BoundaryCondition::FDO, [](double) { return ModeData{{0.0}, 0.0}; },
                           make_ygrid(201, 20.0), make_timegrid(0.1, 10), 5);
  REQUIRE(s.frames.size() == 2);
  for (const auto& f : s.frames)
    for (std::size_t j = 0; j < f.y.size(); ++j) CHECK(std::abs(f.w[j]) + std::abs(f.p[j]) + std::abs(f.v[0][j]) == 0.0);
  CHECK(time_series_csv(s).rfind("t,y,field_name,re,im\n", 0) == 0);
  CHECK(error_kind_of([&] {
          step_ibvp(p, {0.0}, BoundaryCondition::FDO, [](double) { return ModeData{{0.0}, 0.0}; },
                    make_ygrid(32, 5.0), make_timegrid(0.1, 1));
        }) == ErrorKind::ZeroTangentialMode);
}

TEST_CASE("time stepping is first order against the Talbot reference") {
  const ModelParams p = make_params(1.0, 1.0, 0.0, 0.5);
  const RVec xi = {1.0};
  const double T = 0.5;
  const YGrid g = make_ygrid(1501, 30.0);
  const ModeData step{{0.0}, 1.0};
  const cplx ref = talbot_invert(
      [&](cplx s) {
        const Mode m = make_mode(p, s, xi);
        return eval_profile(solve_mode(p, m, BoundaryCondition::NDO, step), 0.0).p_hat / s;
      },
      T);
  RVec err;
  for (double dt : {0.02, 0.01, 0.005}) {
    const auto n = static_cast<std::size_t>(std::lround(T / dt));
    const auto s = step_ibvp(p, xi, BoundaryCondition::NDO, [&](double) { return step; }, g, make_timegrid(T, n), n);
    err.push_back(std::abs(s.frames.back().p[0] - ref));
  }
  CHECK(std::abs(std::log2(err[0] / err[1]) - 1.0) < 0.2);
  CHECK(std::abs(std::log2(err[1] / err[2]) - 1.0) < 0.2);
}

TEST_CASE("time stepping reaches the steady boundary-value solution") {
  const ModelParams p = make_params(1.0, 1.0, 0.3, 0.5);
  const RVec xi = {1.0};
  const YGrid g = make_ygrid(401, 20.0);
  const ModeData h{{cplx(0.3, 0.1)}, cplx(1.0, -0.2)};
  for (auto bc : {BoundaryCondition::TDO, BoundaryCondition::NDO, BoundaryCondition::FDO}) {
    const auto s = step_ibvp(p, xi, bc, [&](double) { return h; }, g, make_timegrid(60.0, 600), 600);
    const DiscreteProfile steady = fd_mode_bvp(p, make_mode(p, 0.0, xi), bc, h, g);
    INFO(to_string(bc));
    CHECK(relative_l2(s.frames.back(), steady) < 1e-3);
  }
}
