#include <benchmark/benchmark.h>

#include "padicdyn/decomposition.hpp"
#include "padicdyn/level_graph.hpp"
#include "padicdyn/lift_engine.hpp"
#include "padicdyn/padic.hpp"

using namespace padicdyn;

static void BM_BruteCensus(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  std::uint64_t nodes = 1;
  for (unsigned i = 0; i < n; ++i) nodes *= 11;
  for (auto _ : state)
    benchmark::DoNotOptimize(cycle_census(build_graph(11, n)));
  state.SetItemsProcessed(state.iterations() * nodes);
}
BENCHMARK(BM_BruteCensus)->DenseRange(2, 6);

static void BM_SymbolicCensus(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(predicted_cycle_census(11, n));
}
BENCHMARK(BM_SymbolicCensus)->Arg(8)->Arg(64)->Arg(512);

static void BM_CensusByLifting(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(census_by_lifting(7, n));
}
BENCHMARK(BM_CensusByLifting)->DenseRange(2, 6);

static void BM_Teichmuller(benchmark::State& state) {
  const unsigned N = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(teichmuller(2, 101, N));
}
BENCHMARK(BM_Teichmuller)->Arg(16)->Arg(64)->Arg(256);

static void BM_SphereDecomposition(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const auto orbits = periodic_orbits(13, 12);
  for (auto _ : state)
    benchmark::DoNotOptimize(sphere_decomposition(orbits.back(), n));
}
BENCHMARK(BM_SphereDecomposition)->DenseRange(1, 6);

BENCHMARK_MAIN();
