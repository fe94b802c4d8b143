#include <benchmark/benchmark.h>

#include "mirp/beam.hpp"
#include "mirp/greedy.hpp"
#include "mirp/ils.hpp"
#include "mirp/localsearch.hpp"

namespace {

using namespace mirp;

void BM_Rvnd(benchmark::State& state) {
  const Instance inst = generate_toy(7, 2, 14);
  GreedyConfig cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    Solution start = complete_randomized(Solution{}, inst, cfg, ++seed);
    state.ResumeTiming();
    benchmark::DoNotOptimize(rvnd(std::move(start), inst, seed));
  }
}
BENCHMARK(BM_Rvnd);

// Beam width N, two children per node, q = 3.
void BM_BeamSearch(benchmark::State& state) {
  const Instance inst = generate_toy(7, 2, 14);
  BeamConfig cfg;
  cfg.beam_width = static_cast<int>(state.range(0));
  cfg.max_children = 2;
  cfg.greedy.q = 3;
  for (auto _ : state) benchmark::DoNotOptimize(run_beam_search(inst, cfg));
}
BENCHMARK(BM_BeamSearch)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Ils(benchmark::State& state) {
  const Instance inst = generate_toy(7, 2, 14);
  const Solution start = complete_deterministic(Solution{}, inst);
  IlsConfig cfg;
  cfg.iterations = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_ils(start, inst, cfg));
}
BENCHMARK(BM_Ils)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
