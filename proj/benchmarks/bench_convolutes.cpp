#include <benchmark/benchmark.h>

#include "hypsum/convolutes.hpp"

using namespace hypsum;

static void BM_GfTable(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  FactorSieve fs(n);
  ConvoluteMethod m = static_cast<ConvoluteMethod>(state.range(1));
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  for (auto _ : state) {
    ConvoluteTable t = gf_table_identity(tau, n, m, fs);
    benchmark::DoNotOptimize(t.table.at_int(n));
  }
  state.SetItemsProcessed(state.iterations() * int64_t(n));
  state.SetLabel(convolute_method_name(m));
}
BENCHMARK(BM_GfTable)
    ->Args({1 << 20, int(ConvoluteMethod::gf1)})
    ->Args({1 << 20, int(ConvoluteMethod::gf2)})
    ->Args({1 << 20, int(ConvoluteMethod::gf3)})
    ->Unit(benchmark::kMillisecond);

static void BM_LfTauViaPsi(benchmark::State& state) {
  const u64 n = u64(state.range(0));
  FactorSieve fs(n);
  for (auto _ : state) {
    ConvoluteTable t = lf_tau_via_psi(n, fs);
    benchmark::DoNotOptimize(t.table.at_int(n));
  }
  state.SetItemsProcessed(state.iterations() * int64_t(n));
}
BENCHMARK(BM_LfTauViaPsi)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
