#include <benchmark/benchmark.h>

#include "ehcr/analytic.hpp"
#include "ehcr/montecarlo.hpp"
#include "ehcr/optimizer.hpp"
#include "ehcr/scenario.hpp"

using namespace ehcr;

static void BM_AnalyticOutage(benchmark::State& state) {
  const AnalyticModel model(with_num_pairs(reference_scenario(), static_cast<int>(state.range(0))));
  double alpha = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.outage(alpha));
    alpha = alpha < 0.9 ? alpha + 0.05 : 0.05;
  }
}
BENCHMARK(BM_AnalyticOutage)->Arg(1)->Arg(2)->Arg(4);

static void BM_ExactOutage(benchmark::State& state) {
  const AnalyticModel model(with_num_pairs(reference_scenario(), static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(model.outage_exact(0.3));
}
BENCHMARK(BM_ExactOutage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_OptimizeAlpha(benchmark::State& state) {
  const AnalyticModel model(reference_scenario());
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_alpha([&](double a) { return model.outage(a); }));
  }
}
BENCHMARK(BM_OptimizeAlpha)->Unit(benchmark::kMillisecond);

static void BM_MonteCarlo(benchmark::State& state) {
  const Scenario s = with_num_pairs(reference_scenario(), static_cast<int>(state.range(0)));
  const std::uint64_t n = 100'000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_outage(s, 0.3, n, 42, EhMode::with_interference, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
