#include <benchmark/benchmark.h>

#include "nerode/nerode.hpp"
#include "support/generators.hpp"

namespace {

void BM_HoKalman(benchmark::State& state) {
  nerode::testing::Rng rng(11);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sys = nerode::testing::random_linear_system(rng, n, 2, 2);
  const auto markov = nerode::markov_parameters(sys, 2 * n + 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(nerode::ho_kalman(markov, n + 1, n + 1, 2, 2));
}
BENCHMARK(BM_HoKalman)->DenseRange(1, 8);

void BM_Rank(benchmark::State& state) {
  nerode::testing::Rng rng(13);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = nerode::testing::random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(nerode::rank(m));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
