#include <gtest/gtest.h>

#include <cmath>

#include "mirp/greedy.hpp"
#include "mirp/ils.hpp"
#include "mirp/validator.hpp"
#include "support.hpp"

using namespace mirp;

namespace {

Money cost_of(Solution s, const Instance& inst) { return ensure_evaluated(s, inst).total_cost; }

}  // namespace

TEST(IlsConfig, Defaults) {
  const IlsConfig cfg;
  EXPECT_EQ(cfg.iterations, 640);
  EXPECT_EQ(cfg.non_improving_limit, 4);
  EXPECT_EQ(cfg.perturbations, 2);
  EXPECT_DOUBLE_EQ(cfg.sa_p_initial, 0.79);
  EXPECT_DOUBLE_EQ(cfg.sa_p_final, 0.01);
  EXPECT_NO_THROW(validate(cfg));
}

TEST(IlsConfig, RejectsBadProbabilities) {
  IlsConfig cfg;
  cfg.sa_p_final = 0.9;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.sa_p_initial = 1.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.iterations = 0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
}

TEST(IlsSchedule, ReferenceDeteriorationAcceptedWithScheduledProbability) {
  const IlsConfig cfg;
  EXPECT_DOUBLE_EQ(acceptance_probability(cfg, 1), 0.79);
  EXPECT_DOUBLE_EQ(acceptance_probability(cfg, cfg.iterations), 0.01);
  const double delta = 50.0;
  for (int it : {1, 100, 320, 640}) {
    const double temp = temperature(cfg, it, delta);
    EXPECT_NEAR(std::exp(-delta / temp), acceptance_probability(cfg, it), 1e-12);
  }
}

TEST(IlsSchedule, TemperatureDecreases) {
  const IlsConfig cfg;
  for (int it = 2; it <= cfg.iterations; ++it) ASSERT_LT(temperature(cfg, it, 10.0), temperature(cfg, it - 1, 10.0));
  EXPECT_EQ(temperature(cfg, 1, 0.0), 0.0);
}

TEST(Perturb, ZeroPerturbationsIsIdentity) {
  Rng rng(41);
  IlsConfig cfg;
  cfg.perturbations = 0;
  for (const auto& inst : fixtures::toy_suite()) {
    const Solution s = fixtures::random_solution(inst, rng, 10);
    const auto out = perturb(s, inst, cfg, rng);
    EXPECT_TRUE(out.solution.same_calls(s));
    EXPECT_TRUE(out.applied.empty());
  }
}

TEST(Perturb, AppliesTwoMovesAndKeepsParity) {
  Rng rng(42);
  const IlsConfig cfg;
  int trials = 0;
  for (const auto& inst : fixtures::toy_suite()) {
    for (int k = 0; k < 100; ++k) {
      const Solution s = fixtures::random_solution(inst, rng, 10);
      const auto out = perturb(s, inst, cfg, rng);
      ASSERT_EQ(out.applied.size(), 2u);  // Insert always applies
      ASSERT_TRUE(parity_valid(out.solution.calls(), inst));
      ++trials;
    }
  }
  EXPECT_EQ(trials, 2100);
}

TEST(Ils, BestNeverWorseAndNonIncreasing) {
  Rng rng(43);
  IlsConfig cfg;
  cfg.iterations = 80;
  for (const auto& inst : fixtures::generated_suite()) {
    const Solution start = fixtures::random_solution(inst, rng, 8);
    cfg.seed = rng();
    const auto res = run_ils(start, inst, cfg);
    EXPECT_LE(res.best_cost, cost_of(start, inst));
    EXPECT_EQ(cost_of(res.best, inst), res.best_cost);
    for (std::size_t i = 1; i < res.trace.size(); ++i) ASSERT_LE(res.trace[i].best_cost, res.trace[i - 1].best_cost);
    for (const auto& row : res.trace)
      if (row.restored) ASSERT_EQ(row.current_cost, row.best_cost);
  }
}

TEST(Ils, DeterministicPerSeed) {
  const Instance inst = generate_toy(13, 2, 14);
  Rng rng(44);
  const Solution start = fixtures::random_solution(inst, rng, 8);
  IlsConfig cfg;
  cfg.iterations = 60;
  cfg.seed = 9;
  const auto a = run_ils(start, inst, cfg);
  const auto b = run_ils(start, inst, cfg);
  EXPECT_TRUE(a.best.same_calls(b.best));
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(a.trace[i].current_cost, b.trace[i].current_cost);
}

TEST(Ils, RestoresAfterStagnation) {
  const Instance inst = fixtures::toy1();
  IlsConfig cfg;
  cfg.iterations = 200;
  cfg.non_improving_limit = 1;
  const auto res = run_ils(complete_deterministic(Solution{}, inst), inst, cfg);
  EXPECT_GT(res.restores, 0);
}

TEST(Ils, NearZeroAcceptanceOnlyTakesDownhill) {
  const Instance inst = generate_toy(7, 2, 14);
  IlsConfig cfg;
  cfg.iterations = 100;
  cfg.sa_p_initial = cfg.sa_p_final = 1e-12;
  Rng rng(45);
  const auto res = run_ils(fixtures::random_solution(inst, rng, 8), inst, cfg);
  Money prev = res.trace.empty() ? Money{} : res.trace.front().current_cost;
  for (const auto& row : res.trace) {
    if (!row.restored) ASSERT_LE(row.current_cost, prev) << "iteration " << row.iter;
    prev = row.current_cost;
  }
}

TEST(Ils, Toy1FromPoorIncumbentReachesOptimum) {
  const Instance inst = fixtures::toy1();
  const Money optimum = brute_force_optimum(inst).cost;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    IlsConfig cfg;
    cfg.seed = seed;
    const auto res = run_ils(Solution{}, inst, cfg);
    EXPECT_LE(res.best_cost.value(), optimum.value() * 1.01) << "seed " << seed;
  }
}

TEST(Ils, ExpiredDeadlineStopsEarly) {
  const Instance inst = fixtures::toy1();
  const Deadline expired(0.0);
  const auto res = run_ils(Solution{}, inst, IlsConfig{}, &expired);
  EXPECT_FALSE(res.completed);
  EXPECT_TRUE(res.trace.empty());
}
