#include <benchmark/benchmark.h>

#include "pcsync/codes.hpp"
#include "pcsync/random.hpp"
#include "pcsync/sync.hpp"

namespace {

using namespace pcsync;

PartialAutomaton wielandt_decoder(std::int64_t n) {
  return literal_decoder(wielandt_code(static_cast<std::size_t>(n)));
}

// Synchronizing random decoder with roughly `internal` states.
PartialAutomaton random_decoder(std::int64_t internal) {
  Rng rng(static_cast<std::uint64_t>(internal));
  for (;;) {
    auto d = literal_decoder(random_maximal_code(rng, 2, static_cast<std::size_t>(internal)));
    if (is_synchronizing(d)) return d;
  }
}

void BM_ExactWielandt(benchmark::State& state) {
  auto a = wielandt_decoder(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_word_exact(a, Goal::sync(), {}));
  state.counters["states"] = static_cast<double>(a.size());
}

void BM_GreedyWielandt(benchmark::State& state) {
  auto a = wielandt_decoder(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_sync(a));
}

void BM_LogWielandt(benchmark::State& state) {
  auto a = wielandt_decoder(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(approx_sync_log(a));
}

void BM_EpsWielandt(benchmark::State& state) {
  auto a = wielandt_decoder(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(approx_sync_eps(a, Epsilon(1, 2)));
}

void BM_ExactRandom(benchmark::State& state) {
  auto a = random_decoder(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_word_exact(a, Goal::sync(), {}));
}

void BM_GreedyRandom(benchmark::State& state) {
  auto a = random_decoder(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_sync(a));
}

void BM_LogRandom(benchmark::State& state) {
  auto a = random_decoder(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(approx_sync_log(a));
}

void BM_LowRankWord(benchmark::State& state) {
  auto a = random_decoder(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(low_rank_word(a, false));
}

}  // namespace

BENCHMARK(BM_ExactWielandt)->DenseRange(3, 8);
BENCHMARK(BM_GreedyWielandt)->DenseRange(3, 8);
BENCHMARK(BM_LogWielandt)->DenseRange(3, 8);
BENCHMARK(BM_EpsWielandt)->DenseRange(3, 8);
BENCHMARK(BM_ExactRandom)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_GreedyRandom)->RangeMultiplier(2)->Range(8, 256);
BENCHMARK(BM_LogRandom)->RangeMultiplier(2)->Range(8, 256);
BENCHMARK(BM_LowRankWord)->RangeMultiplier(2)->Range(8, 256);
BENCHMARK_MAIN();
