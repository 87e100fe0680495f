#include <benchmark/benchmark.h>

#include "sheath/dists.hpp"
#include "sheath/kernels.hpp"

using namespace sheath;

namespace {

KernelContext absorbing(double eps, double phi_b) {
  KernelContext ctx;
  ctx.f_inf = drifting_bump(-2.0, eps);
  ctx.bc.phi_b = phi_b;
  return ctx;
}

KernelContext reflecting(double eps, double phi_b) {
  auto pair = make_delta_family(GeneralFamily{0.2, 0.8 / 1.5, 2.0, 2.0, 0.5, phi_b}, eps);
  KernelContext ctx;
  ctx.f_inf = pair.f_inf;
  ctx.f_b = pair.f_b;
  ctx.bc = {phi_b, 0.5};
  return ctx;
}

}  // namespace

static void BM_DistributionSetup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(drifting_bump(-2.0, 0.01));
}
BENCHMARK(BM_DistributionSetup);

static void BM_Flux(benchmark::State& state) {
  auto f = drifting_bump(-2.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(flux(f));
}
BENCHMARK(BM_Flux);

static void BM_RhoAbsorbing(benchmark::State& state) {
  auto ctx = absorbing(0.01, 1.0);
  double phi = 0.0;
  for (auto _ : state) {
    phi = phi > 1.0 ? 1e-3 : phi + 1e-3;
    benchmark::DoNotOptimize(rho_i(ctx, phi));
  }
}
BENCHMARK(BM_RhoAbsorbing);

static void BM_RhoReflecting(benchmark::State& state) {
  auto ctx = reflecting(0.05, 0.5);
  double phi = 0.0;
  for (auto _ : state) {
    phi = phi > 0.5 ? 1e-3 : phi + 1e-3;
    benchmark::DoNotOptimize(rho_i_plus(ctx, phi));
  }
}
BENCHMARK(BM_RhoReflecting);

static void BM_IonPotential(benchmark::State& state) {
  auto ctx = absorbing(0.01, 1.0);
  double phi = 0.0;
  for (auto _ : state) {
    phi = phi > 1.0 ? 1e-3 : phi + 1e-3;
    benchmark::DoNotOptimize(ion_potential(ctx, IonBranch::kAbsorbing, phi));
  }
}
BENCHMARK(BM_IonPotential);

BENCHMARK_MAIN();
