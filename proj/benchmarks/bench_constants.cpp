#include <benchmark/benchmark.h>

#include "hypsum/constants.hpp"

using namespace hypsum;

static void BM_ZetaEulerMaclaurin(benchmark::State& state) {
  // the cache is keyed by s, so perturb s per iteration to measure real work
  double s = 2.0;
  for (auto _ : state) {
    s += 1e-9;
    ConstantEstimate z = zeta(s);
    benchmark::DoNotOptimize(z.value);
  }
}
BENCHMARK(BM_ZetaEulerMaclaurin);

static void BM_PrimeSumDirect(benchmark::State& state) {
  u64 pmax = u64(state.range(0));
  prime_sum(PrimeSumWeight::inv_p2, pmax);  // warm the prime cache
  for (auto _ : state) {
    ++pmax;  // results are memoized by (weight, p_max); step past the memo
    ConstantEstimate a = prime_sum(PrimeSumWeight::logp_over_p2, pmax);
    benchmark::DoNotOptimize(a.value);
  }
}
BENCHMARK(BM_PrimeSumDirect)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_PrimeZetaAccelerated(benchmark::State& state) {
  double s = 2.0;
  for (auto _ : state) {
    s += 1e-9;
    ConstantEstimate p = prime_zeta(s);
    benchmark::DoNotOptimize(p.value);
  }
}
BENCHMARK(BM_PrimeZetaAccelerated);
