#include <benchmark/benchmark.h>

#include "mirp/evaluator.hpp"
#include "mirp/greedy.hpp"
#include "mirp/localsearch.hpp"

namespace {

using namespace mirp;

// A long greedy schedule on the largest toy so the replay window matters.
const Instance& bench_instance() {
  static const Instance inst = generate_toy(7, 2, 14);
  return inst;
}

void BM_EvaluateFull(benchmark::State& state) {
  const Instance& inst = bench_instance();
  const Solution s = complete_deterministic(Solution{}, inst);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_full(s, inst));
  state.counters["calls"] = static_cast<double>(s.size());
}
BENCHMARK(BM_EvaluateFull);

// Changing the last call replays only from the nearest checkpoint.
void BM_EvaluateIncrementalTail(benchmark::State& state) {
  const Instance& inst = bench_instance();
  Solution s = complete_deterministic(Solution{}, inst);
  ensure_evaluated(s, inst);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_incremental(s, inst, s.size() - 1));
}
BENCHMARK(BM_EvaluateIncrementalTail);

void BM_GreedyDeterministic(benchmark::State& state) {
  const Instance& inst = bench_instance();
  for (auto _ : state) benchmark::DoNotOptimize(complete_deterministic(Solution{}, inst));
}
BENCHMARK(BM_GreedyDeterministic);

void BM_GreedyRandomized(benchmark::State& state) {
  const Instance& inst = bench_instance();
  GreedyConfig cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(complete_randomized(Solution{}, inst, cfg, ++seed));
}
BENCHMARK(BM_GreedyRandomized);

}  // namespace
