#include <benchmark/benchmark.h>

#include "nerode/nerode.hpp"
#include "support/generators.hpp"

namespace {

using nerode::testing::Rng;

nerode::MealyMachine machine_of_size(std::size_t n) {
  Rng rng(n);
  return nerode::testing::random_machine(rng, n, 3, 2);
}

void BM_Minimize(benchmark::State& state) {
  const auto m = machine_of_size(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nerode::minimize(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Minimize)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_ControllableSubset(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = nerode::testing::random_layered_machine(rng, n, n / 2, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(nerode::controllable_subset(m));
}
BENCHMARK(BM_ControllableSubset)->RangeMultiplier(4)->Range(8, 4096);

void BM_QuotientMap(benchmark::State& state) {
  const auto m = machine_of_size(static_cast<std::size_t>(state.range(0)));
  const auto q = nerode::minimize(m, nerode::DomainMode::kControllable);
  for (auto _ : state) benchmark::DoNotOptimize(nerode::quotient_map(m, q));
}
BENCHMARK(BM_QuotientMap)->RangeMultiplier(4)->Range(8, 256);

void BM_WindowToMealy(benchmark::State& state) {
  Rng rng(3);
  const auto w = nerode::testing::random_window(rng, 3, static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(nerode::minimize(w));
}
BENCHMARK(BM_WindowToMealy)->DenseRange(1, 6);

void BM_Evaluate(benchmark::State& state) {
  Rng rng(5);
  const nerode::System sys = machine_of_size(64);
  const auto u = nerode::testing::random_sequence(rng, nerode::Alphabet::range(3), 12);
  for (auto _ : state) benchmark::DoNotOptimize(nerode::evaluate(sys, u, -20, 20));
}
BENCHMARK(BM_Evaluate);

}  // namespace
