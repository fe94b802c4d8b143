#include <gtest/gtest.h>

#include "mirp/greedy.hpp"
#include "support.hpp"

using namespace mirp;

namespace {

Money cost_of(Solution s, const Instance& inst) { return ensure_evaluated(s, inst).total_cost; }

}  // namespace

// Two round trips fit in twelve periods (ends 1, 4, 7, 10); the fifth call
// would end after the horizon. Overruns: producer 11, consumer 11; legs
// 10 + 9.50 + 10.
TEST(Greedy, Toy1DeterministicCompletion) {
  const Instance inst = fixtures::toy1();
  Solution s = complete_deterministic(Solution{}, inst);
  const std::vector<Call> expected{{0, 0}, {1, 0}, {0, 0}, {1, 0}};
  EXPECT_TRUE(s.same_calls(Solution::from_calls(expected, inst)));
  EXPECT_EQ(cost_of(s, inst), Money::from_cents(222950));
}

TEST(Greedy, FirstCandidateIsEarliestViolation) {
  const Instance inst = fixtures::toy1();
  Simulator sim(inst);
  // Both ports breach in period 3; the tie goes to the lower port id, and
  // the empty vessel can load there directly.
  const auto calls = prioritized_calls(sim, 5);
  ASSERT_FALSE(calls.empty());
  EXPECT_EQ(calls.front(), (Call{0, 0}));
}

TEST(Greedy, EnablingVisitWhenLoadStateMismatches) {
  const Instance inst = fixtures::toy1();
  Simulator sim(inst);
  sim.push({0, 0});
  sim.push({1, 0});
  // The consumer now breaches first, but the vessel is empty: it must load first.
  for (const auto& c : prioritized_calls(sim, 5)) EXPECT_EQ(inst.kind(c.port), PortKind::Production);
}

TEST(Greedy, StopsWhenNoPortViolates) {
  Instance inst = fixtures::toy1();
  for (auto& p : inst.ports) std::fill(p.rate.begin(), p.rate.end(), 0.0);
  Simulator sim(inst);
  EXPECT_TRUE(prioritized_calls(sim, 5).empty());
  EXPECT_TRUE(complete_deterministic(Solution{}, inst).empty());
}

TEST(Greedy, ZeroNoiseEqualsDeterministic) {
  GreedyConfig cfg;
  cfg.sigma_frac = 0.0;
  cfg.randomize_vessel = true;
  for (const auto& inst : fixtures::toy_suite()) {
    const Solution det = complete_deterministic(Solution{}, inst);
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      EXPECT_TRUE(complete_randomized(Solution{}, inst, cfg, seed).same_calls(det)) << inst.name;
  }
}

TEST(Greedy, RandomizedIsDeterministicPerSeed) {
  const Instance inst = generate_toy(7, 2, 14);
  GreedyConfig cfg;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    EXPECT_TRUE(complete_randomized(Solution{}, inst, cfg, seed).same_calls(complete_randomized(Solution{}, inst, cfg, seed)));
}

// More noise moves more completions away from the deterministic one.
TEST(Greedy, DeviationGrowsWithNoise) {
  const auto suite = fixtures::generated_suite();
  auto deviation_rate = [&](double sigma) {
    GreedyConfig cfg;
    cfg.sigma_frac = sigma;
    int differ = 0, total = 0;
    for (const auto& inst : suite) {
      const Solution det = complete_deterministic(Solution{}, inst);
      for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        differ += !complete_randomized(Solution{}, inst, cfg, seed).same_calls(det);
        ++total;
      }
    }
    return static_cast<double>(differ) / total;
  };
  const double low = deviation_rate(0.02);
  const double high = deviation_rate(2.0);
  EXPECT_LT(low, high);
  EXPECT_GT(high, 0.05);
}

TEST(Greedy, LowerMedian) {
  auto m = [](std::vector<std::int64_t> v) {
    std::vector<Money> out;
    for (auto c : v) out.push_back(Money::from_cents(c));
    return lower_median(out).cents();
  };
  EXPECT_EQ(m({5}), 5);
  EXPECT_EQ(m({9, 1}), 1);
  EXPECT_EQ(m({3, 1, 2}), 2);
  EXPECT_EQ(m({4, 1, 3, 2}), 2);
  EXPECT_THROW(lower_median({}), std::invalid_argument);
}

TEST(Greedy, ScoreAggregatesCompletions) {
  const Instance inst = generate_toy(13, 2, 14);
  GreedyConfig cfg;
  cfg.q = 5;
  const auto score = score_partial(Solution{}, inst, cfg, 99);
  ASSERT_EQ(score.completions.size(), 5u);
  EXPECT_TRUE(score.completions[0].solution.same_calls(complete_deterministic(Solution{}, inst)));
  std::vector<Money> costs;
  for (const auto& c : score.completions) {
    Solution s = c.solution;
    EXPECT_EQ(cost_of(s, inst), c.cost);
    costs.push_back(c.cost);
  }
  EXPECT_EQ(score.score, lower_median(costs));
  EXPECT_EQ(score.completions[score.best_index].cost, *std::min_element(costs.begin(), costs.end()));
  for (int k = 1; k < 5; ++k)
    EXPECT_TRUE(score.completions[static_cast<std::size_t>(k)].solution.same_calls(
        complete_randomized(Solution{}, inst, cfg, 99 + static_cast<std::uint64_t>(k))));

  cfg.q = 1;
  EXPECT_EQ(score_partial(Solution{}, inst, cfg, 99).score, score.completions[0].cost);
}

TEST(Greedy, CompletionExtendsPrefix) {
  const Instance inst = generate_toy(9, 2, 14);
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Solution prefix = fixtures::random_solution(inst, rng, 4);
    const Solution full = complete_deterministic(prefix, inst);
    ASSERT_GE(full.size(), prefix.size());
    for (std::size_t i = 0; i < prefix.size(); ++i) EXPECT_EQ(full[i], prefix[i]);
  }
}
