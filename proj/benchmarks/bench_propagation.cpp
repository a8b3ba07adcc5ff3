#include <benchmark/benchmark.h>

#include <cmath>

#include "mixonium/bloch.hpp"
#include "mixonium/propagator.hpp"

using namespace mixonium;

namespace {

FieldSnapshot gaussian_pair(const Grid& grid) {
  FieldSnapshot f;
  for (std::size_t i = 0; i < grid.n_t; ++i) {
    const double t = grid.t(i);
    f.omega_a.push_back(0.6 * std::exp(-t * t / 18.0));
    f.omega_b.push_back(0.3 * std::exp(-(t - 6.0) * (t - 6.0) / 72.0));
  }
  return f;
}

MediumContext medium_with(int nodes, const Grid& grid) {
  MediumContext m;
  m.initial_rho = initial_density_matrix(make_medium_preparation(0.8, 0.2, 0.8));
  m.ensemble = make_detuning_ensemble(1.0, nodes);
  m.mu = 1.0;
  m.dt = grid.dt();
  return m;
}

}  // namespace

static void BM_RK4Step(benchmark::State& state) {
  BlochState s = BlochState::from_matrix(
      initial_density_matrix(make_medium_preparation(0.8, 0.2, 0.8)));
  for (auto _ : state) {
    rk4_step(s, {0.3, 0.0}, {0.1, 0.0}, {0.31, 0.0}, {0.12, 0.0}, 0.4, 0.05);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_RK4Step);

static void BM_BlochIntegrate(benchmark::State& state) {
  Grid grid{-60.0, 60.0, static_cast<std::size_t>(state.range(0)), 0.0, 1.0, 2};
  const auto f = gaussian_pair(grid);
  const DensityMatrix rho0 = initial_density_matrix(make_medium_preparation(0.8, 0.2, 0.8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bloch_integrate(rho0, f.omega_a, f.omega_b, 0.4, grid.dt()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BlochIntegrate)->Arg(1024)->Arg(2048)->Arg(4096);

static void BM_EnsembleResponse(benchmark::State& state) {
  Grid grid{-60.0, 60.0, 2048, 0.0, 1.0, 2};
  const auto f = gaussian_pair(grid);
  const auto medium = medium_with(static_cast<int>(state.range(0)), grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ensemble_response(f, medium));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2048);
}
BENCHMARK(BM_EnsembleResponse)->Arg(1)->Arg(41)->Arg(161)->Unit(benchmark::kMillisecond);

static void BM_MaxwellStep(benchmark::State& state) {
  Grid grid{-60.0, 60.0, 2048, 0.0, 1.0, 2};
  const auto f = gaussian_pair(grid);
  const auto medium = medium_with(41, grid);
  const auto response = ensemble_response(f, medium);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maxwell_step(f, response, medium, 0.01));
  }
}
BENCHMARK(BM_MaxwellStep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
