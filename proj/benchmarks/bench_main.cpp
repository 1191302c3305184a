#include <vector>

#include <benchmark/benchmark.h>

#include "gapbench/google.hpp"
#include "gapbench/graph.hpp"
#include "gapbench/hamiltonian.hpp"
#include "gapbench/pagerank.hpp"
#include "gapbench/spectra.hpp"

using namespace gapbench;

namespace {

GoogleOperator scale_free_google(std::size_t n) {
  return GoogleOperator(StochasticOperator(scale_free_graph(n, {}, 1)), 0.85);
}

void BM_GoogleApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto google = scale_free_google(n);
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  for (auto _ : state) {
    google.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_GoogleApply)->RangeMultiplier(8)->Range(512, 1 << 18);

void BM_HamiltonianApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto google = scale_free_google(n);
  const HamiltonianOperator h(google, 0.5);
  std::vector<double> x(n, 1.0), y(n);
  for (auto _ : state) {
    h.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_HamiltonianApply)->RangeMultiplier(8)->Range(512, 1 << 18);

void BM_PowerMethod(benchmark::State& state) {
  const auto google = scale_free_google(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(power_method(google, 1e-8).iterations);
}
BENCHMARK(BM_PowerMethod)->Arg(4096)->Arg(65536)->Unit(benchmark::kMillisecond);

void BM_LowestTwo(benchmark::State& state) {
  const auto google = scale_free_google(static_cast<std::size_t>(state.range(0)));
  const HamiltonianOperator h(google, 0.7);
  SolverOptions opts;
  opts.method = state.range(1) ? EigenMethod::iterative : EigenMethod::dense;
  for (auto _ : state) benchmark::DoNotOptimize(lowest_two_eigen(h, opts).lambda2);
}
BENCHMARK(BM_LowestTwo)
    ->ArgNames({"n", "iterative"})
    ->ArgsProduct({{64, 256, 512}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
