#include <benchmark/benchmark.h>

#include "sheath/electrons.hpp"
#include "sheath/hydro.hpp"
#include "sheath/sagdeev.hpp"
#include "sheath/sheath_solver.hpp"

using namespace sheath;

namespace {

KernelContext beam(double phi_b) {
  KernelContext ctx;
  ctx.f_inf = drifting_bump(-2.0, 0.01);
  ctx.bc.phi_b = phi_b;
  return ctx;
}

SolveOptions grid(std::size_t n) {
  SolveOptions o;
  o.sagdeev.grid_points = n;
  o.profile.grid_points = n;
  return o;
}

}  // namespace

static void BM_Sagdeev(benchmark::State& state) {
  auto ctx = beam(1.0);
  auto ne = ElectronModel::boltzmann();
  SagdeevOptions o;
  o.grid_points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_sagdeev(ctx, ne, Side::kAttractive, o));
}
BENCHMARK(BM_Sagdeev)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_SolveAttractive(benchmark::State& state) {
  auto ctx = beam(1.0);
  auto ne = ElectronModel::boltzmann();
  auto o = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_sheath(ctx, ne, o));
}
BENCHMARK(BM_SolveAttractive)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_SolveRepulsive(benchmark::State& state) {
  auto ctx = beam(-0.3);
  auto ne = ElectronModel::boltzmann();
  auto o = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_sheath(ctx, ne, o));
}
BENCHMARK(BM_SolveRepulsive)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_EulerPoisson(benchmark::State& state) {
  auto ne = ElectronModel::boltzmann();
  auto o = grid(10000);
  for (auto _ : state) benchmark::DoNotOptimize(solve_euler_poisson(2.0, 1.0, ne, o));
}
BENCHMARK(BM_EulerPoisson)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
