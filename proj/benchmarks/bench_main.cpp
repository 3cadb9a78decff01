#include <benchmark/benchmark.h>

#include <cmath>

#include "stokes_outflow/resolvent.hpp"
#include "stokes_outflow/symbols.hpp"
#include "stokes_outflow/timedomain.hpp"

using namespace stokes_outflow;

namespace {

const ModelParams kParams = make_params(1.0, 2.0, 0.5, 0.1);

void BM_SectorVerify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sector_verify(kParams, 0.7853981633974483, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SectorVerify)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SolveMode(benchmark::State& state) {
  const auto bc = static_cast<BoundaryCondition>(state.range(0));
  const Mode m = make_mode(kParams, cplx(1.0, 0.5), {1.2, -0.7});
  const ModeData d{{cplx(0.3, 0.1), cplx(-0.2, 0.4)}, cplx(1.0, 0.0)};
  for (auto _ : state) benchmark::DoNotOptimize(solve_mode(kParams, m, bc, d));
  state.SetLabel(to_string(bc));
}
BENCHMARK(BM_SolveMode)->DenseRange(0, 3);

void BM_SolveSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TangentialGrid g{{n, n}, {6.283185307179586, 6.283185307179586}};
  BoundaryField f = zero_boundary_field(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    const double x = g.coord(0, idx[0]) - 3.14159, y = g.coord(1, idx[1]) - 3.14159;
    f.h_w[i] = std::exp(-2.0 * (x * x + y * y));
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(kParams, BoundaryCondition::NDO, f, 1.0));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_SolveSpectrum)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_FdModeBvp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Mode m = make_mode(kParams, cplx(1.0, 0.5), {1.2});
  const ModeData d{{cplx(0.3, 0.1)}, cplx(1.0, 0.0)};
  const YGrid g = resolving_ygrid(kParams, m, n, 16.0);
  for (auto _ : state) benchmark::DoNotOptimize(fd_mode_bvp(kParams, m, BoundaryCondition::FDO, d, g));
}
BENCHMARK(BM_FdModeBvp)->Arg(1000)->Arg(2000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
