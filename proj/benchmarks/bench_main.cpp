#include "critherm/design.hpp"
#include "critherm/harness/sweep.hpp"
#include "critherm/models.hpp"
#include "critherm/thermo.hpp"

#include <benchmark/benchmark.h>

using namespace critherm;

static void BM_Spin1Diagonalize(benchmark::State& state) {
  const ParamHamiltonian h = build_spin1_sector(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h.at(-1.8)));
}
BENCHMARK(BM_Spin1Diagonalize)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_XxzDiagonalize(benchmark::State& state) {
  const ParamHamiltonian h = build_xxz(static_cast<int>(state.range(0)), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h.at(0.3)));
}
BENCHMARK(BM_XxzDiagonalize)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_ObservableCfi(benchmark::State& state) {
  const ModelSpec spec = ModelSpec::xxz(static_cast<int>(state.range(0)));
  const ParamHamiltonian h = build_model(spec);
  const Spectrum s = eig_hermitian(h.at(0.5));
  const Measurement m = make_measurement(s, build_observable(spec, ObservableLabel::Sz2));
  for (auto _ : state) benchmark::DoNotOptimize(cfi(m, s, gibbs(s, 0.4)));
}
BENCHMARK(BM_ObservableCfi)->Arg(6)->Arg(8);

static void BM_Sweep(benchmark::State& state) {
  harness::SweepConfig c;
  c.model = ModelSpec::spin1(100);
  c.lambda_grid = linspace(-2.5, -1.0, 16);
  c.temperatures = linspace(0.02, 0.6, 30);
  c.observables = {ObservableLabel::Jperp2, ObservableLabel::N0};
  for (auto _ : state) benchmark::DoNotOptimize(harness::run_sweep(c));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

static void BM_OptimalGap(benchmark::State& state) {
  double m = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_gap(m));
    m = m < 1e6 ? m * 1.3 : 1.0;
  }
}
BENCHMARK(BM_OptimalGap);
BENCHMARK_MAIN();
