#include <benchmark/benchmark.h>

#include "hypsum/summation.hpp"

using namespace hypsum;

// prefix arrays are built once, then each evaluation is O(sqrt x)
static void BM_GcdSumEval(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  Summator sums(n);
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  sums.sum_gcd_hyperbolic(tau, double(n));  // warm the tables
  for (auto _ : state) {
    ExactSum s = sums.sum_gcd_hyperbolic(tau, double(n));
    benchmark::DoNotOptimize(s.ival);
  }
}
BENCHMARK(BM_GcdSumEval)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMicrosecond);

static void BM_LcmSumEval(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  Summator sums(n);
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  sums.sum_lcm_hyperbolic(tau, double(n));
  for (auto _ : state) {
    ExactSum s = sums.sum_lcm_hyperbolic(tau, double(n));
    benchmark::DoNotOptimize(s.ival);
  }
}
BENCHMARK(BM_LcmSumEval)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMicrosecond);

static void BM_SummatorWarmup(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  for (auto _ : state) {
    Summator sums(n);
    ExactSum s = sums.sum_gcd_hyperbolic(tau, double(n));
    benchmark::DoNotOptimize(s.ival);
  }
  state.SetItemsProcessed(state.iterations() * int64_t(n));
}
BENCHMARK(BM_SummatorWarmup)->Arg(1 << 20)->Arg(1 << 23)->Unit(benchmark::kMillisecond);
