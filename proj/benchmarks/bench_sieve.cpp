#include <benchmark/benchmark.h>

#include "hypsum/sieve.hpp"

using namespace hypsum;

static void BM_FactorSieve(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  for (auto _ : state) {
    FactorSieve fs(n);
    benchmark::DoNotOptimize(fs.spf(n));
  }
  state.SetItemsProcessed(state.iterations() * int64_t(n));
}
BENCHMARK(BM_FactorSieve)->Arg(1 << 20)->Arg(1 << 23)->Unit(benchmark::kMillisecond);

static void BM_SieveTau(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  FactorSieve fs(n);
  for (auto _ : state) {
    ValueTable t = sieve_standard(StandardFunction::tau, n, fs);
    benchmark::DoNotOptimize(t.at_int(n));
  }
  state.SetItemsProcessed(state.iterations() * int64_t(n));
}
BENCHMARK(BM_SieveTau)->Arg(1 << 20)->Arg(1 << 23)->Unit(benchmark::kMillisecond);

static void BM_SieveTauSegmented(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  SieveConfig saved = sieve_config();
  sieve_config().segmented_threshold = 1;
  for (auto _ : state) {
    ValueTable t = sieve_standard(StandardFunction::tau, n);
    benchmark::DoNotOptimize(t.at_int(n));
  }
  sieve_config() = saved;
  state.SetItemsProcessed(state.iterations() * int64_t(n));
}
BENCHMARK(BM_SieveTauSegmented)->Arg(1 << 20)->Arg(1 << 23)->Unit(benchmark::kMillisecond);

static void BM_DirichletConvolve(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  FactorSieve fs(n);
  ValueTable psi = sieve_standard(StandardFunction::psi, n, fs);
  ValueTable tau2 = sieve_standard(StandardFunction::tau_squared, n, fs);
  for (auto _ : state) {
    ValueTable c = dirichlet_convolve(psi, tau2);
    benchmark::DoNotOptimize(c.at_int(n));
  }
  state.SetItemsProcessed(state.iterations() * int64_t(n));
}
BENCHMARK(BM_DirichletConvolve)->Arg(1 << 18)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
