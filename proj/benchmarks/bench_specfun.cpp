#include <benchmark/benchmark.h>

#include "ehcr/specfun.hpp"

namespace sf = ehcr::specfun;

static void BM_BesselK(benchmark::State& state) {
  const int nu = static_cast<int>(state.range(0));
  double z = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::bessel_k(nu, z));
    z = z < 20.0 ? z * 1.1 : 0.3;
  }
}
BENCHMARK(BM_BesselK)->Arg(0)->Arg(1)->Arg(4);

static void BM_WhittakerW(benchmark::State& state) {
  const double L = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::whittaker_w(-L, 0.5, 1.7));
    benchmark::DoNotOptimize(sf::whittaker_w(-(2.0 * L + 1.0) / 2.0, 1.0, 0.4));
  }
}
BENCHMARK(BM_WhittakerW)->Arg(1)->Arg(2)->Arg(4);

static void BM_LowerIncGamma(benchmark::State& state) {
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::lower_inc_gamma_int(4, x));
    x = x < 30.0 ? x + 0.37 : -5.0;
  }
}
BENCHMARK(BM_LowerIncGamma);
