#include <gtest/gtest.h>

#include "mirp/greedy.hpp"
#include "mirp/validator.hpp"
#include "support.hpp"

using namespace mirp;

namespace {

int count_kind(const ArcFlow& f, ArcKind kind) {
  int n = 0;
  for (const auto& cls : f.arcs)
    for (const auto& a : cls)
      if (a.kind == kind) n += a.flow;
  return n;
}

Instance two_vessel_toy1() {
  Instance inst = fixtures::toy1();
  inst.vessels.push_back({1, 0, 0, 0, LoadState::Empty});
  validate(inst);
  return inst;
}

}  // namespace

TEST(ArcFlow, EmptySolutionWaitsAtStart) {
  const Instance inst = generate_toy(3, 2, 12);
  const EvalResult eval = evaluate_full(Solution{}, inst);
  const ArcFlow f = schedule_to_arcflow(Solution{}, eval, inst);
  EXPECT_EQ(count_kind(f, ArcKind::Source), inst.num_vessels());
  EXPECT_EQ(count_kind(f, ArcKind::Sink), inst.num_vessels());
  EXPECT_EQ(count_kind(f, ArcKind::InterRegional), 0);
  EXPECT_EQ(count_kind(f, ArcKind::Ballast), 0);
  for (const auto& cls : f.arcs)
    for (const auto& a : cls) EXPECT_FALSE(a.operates);
}

TEST(ArcFlow, Toy1RoundTripHasOneLoadedArc) {
  const Instance inst = fixtures::toy1();
  const auto s = Solution::from_calls({{0, 0}, {1, 0}}, inst);
  const ArcFlow f = schedule_to_arcflow(s, evaluate_full(s, inst), inst);
  EXPECT_EQ(count_kind(f, ArcKind::InterRegional), 1);
  for (const auto& a : f.arcs[0])
    if (a.kind == ArcKind::InterRegional) {
      EXPECT_EQ(a.from, (Node{0, 1}));
      EXPECT_EQ(a.to, (Node{1, 3}));
      EXPECT_TRUE(a.operates);
    }
}

TEST(ArcFlow, SourceFlowEqualsFleetPerClass) {
  Rng rng(51);
  for (const auto& inst : fixtures::generated_suite()) {
    const Solution s = fixtures::random_solution(inst, rng, 10);
    const ArcFlow f = schedule_to_arcflow(s, evaluate_full(s, inst), inst);
    for (std::size_t c = 0; c < inst.classes.size(); ++c) {
      int fleet = 0, source = 0;
      for (const auto& v : inst.vessels) fleet += v.class_id == static_cast<int>(c);
      for (const auto& a : f.arcs[c]) source += a.kind == ArcKind::Source ? a.flow : 0;
      EXPECT_EQ(source, fleet);
    }
  }
}

TEST(ArcFlow, StaleEvaluationIsRejected) {
  const Instance inst = fixtures::toy1();
  const auto s = Solution::from_calls({{0, 0}, {1, 0}}, inst);
  const EvalResult stale = evaluate_full(Solution::from_calls({{0, 0}}, inst), inst);
  EXPECT_THROW(schedule_to_arcflow(s, stale, inst), ArcFlowError);
}

TEST(Check, EmptySolutionObjectiveIsMinusPenalty) {
  for (const auto& inst : fixtures::toy_suite()) {
    const auto rep = check(Solution{}, inst);
    EXPECT_TRUE(rep.clean()) << describe(rep);
    EXPECT_EQ(rep.objective, -evaluate_full(Solution{}, inst).penalty_cost);
    EXPECT_TRUE(rep.matches_evaluator);
  }
}

TEST(Check, RandomSolutionsAreCleanAndAgree) {
  Rng rng(52);
  for (const auto& inst : fixtures::toy_suite()) {
    for (int k = 0; k < 60; ++k) {
      const Solution s = fixtures::random_solution(inst, rng, 16);
      const auto rep = check(s, inst);
      ASSERT_TRUE(rep.clean()) << inst.name << "\n" << describe(rep);
      ASSERT_TRUE(rep.matches_evaluator) << describe(rep);
      ASSERT_EQ(rep.difference, 0.0);
    }
  }
}

TEST(Check, InjectedBerthOverlapIsLocated) {
  const Instance inst = two_vessel_toy1();
  const auto s = Solution::from_calls({{0, 0}, {0, 1}}, inst);
  EvalResult eval = evaluate_full(s, inst);
  ASSERT_EQ(eval.schedule[1].berth_start, 1);
  eval.schedule[1].berth_start = 0;
  eval.schedule[1].berth_end = 1;
  const auto rep = check_arcflow(schedule_to_arcflow(s, eval, inst), eval, inst);
  ASSERT_EQ(rep.berth.size(), 1u);
  EXPECT_EQ(rep.berth[0].port, 0);
  EXPECT_EQ(rep.berth[0].t, 1);
  EXPECT_EQ(rep.berth[0].excess, 1);
}

TEST(Check, CorruptedFlowsAreReported) {
  const Instance inst = fixtures::toy1();
  const auto s = Solution::from_calls({{0, 0}, {1, 0}}, inst);
  const EvalResult eval = evaluate_full(s, inst);
  ArcFlow f = schedule_to_arcflow(s, eval, inst);
  for (auto& a : f.arcs[0])
    if (a.kind == ArcKind::InterRegional) a.flow = 2;
  const auto rep = check_arcflow(f, eval, inst);
  EXPECT_FALSE(rep.flow_balance.empty());
  EXPECT_FALSE(rep.domain.empty());
  EXPECT_FALSE(rep.inventory.empty());  // the doubled arc also doubles the cargo
  EXPECT_FALSE(rep.matches_evaluator);
}

TEST(Check, WrongDirectionSpotChargeBreaksBounds) {
  const Instance inst = fixtures::toy1();
  EvalResult eval = evaluate_full(Solution{}, inst);
  ArcFlow f = schedule_to_arcflow(Solution{}, eval, inst);
  f.spot_charter[0][1] = -1.0;
  const auto rep = check_arcflow(f, eval, inst);
  EXPECT_FALSE(rep.domain.empty());
  EXPECT_FALSE(rep.inventory.empty());
}

TEST(BruteForce, Toy1Optimum) {
  const Instance inst = fixtures::toy1();
  const auto bf = brute_force_optimum(inst);
  // Frozen regression constant: two full round trips.
  EXPECT_EQ(bf.cost, Money::from_cents(222950));
  EXPECT_EQ(bf.solution.size(), 4u);
  const auto four = brute_force_optimum(inst, 4);
  Solution greedy = complete_deterministic(Solution{}, inst);
  EXPECT_LE(four.cost, ensure_evaluated(greedy, inst).total_cost);
}

TEST(BruteForce, ZeroDemandPrefersNothing) {
  Instance inst = generate_toy(5, 2, 12);
  for (auto& p : inst.ports) std::fill(p.rate.begin(), p.rate.end(), 0.0);
  const auto bf = brute_force_optimum(inst);
  EXPECT_TRUE(bf.solution.empty());
  EXPECT_EQ(bf.cost, Money{});
}

TEST(BruteForce, LowerBoundsRandomSolutions) {
  Rng rng(53);
  for (const auto& inst : fixtures::toy_suite()) {
    const Money opt = brute_force_optimum(inst).cost;
    for (int k = 0; k < 200; ++k) {
      const Solution s = fixtures::random_solution(inst, rng, 12);
      ASSERT_LE(opt, evaluate_full(s, inst).total_cost) << inst.name;
    }
  }
}

TEST(BruteForce, SolutionReproducesCost) {
  for (const auto& inst : fixtures::toy_suite()) {
    const auto bf = brute_force_optimum(inst);
    EXPECT_EQ(evaluate_full(bf.solution, inst).total_cost, bf.cost);
    EXPECT_EQ(evaluate_full(bf.solution, inst).truncated_count, 0);
  }
}

TEST(BruteForce, GuardRefusesLargeSearches) {
  EXPECT_THROW(brute_force_optimum(generate_toy(5, 2, 14), std::nullopt, 10), SearchSpaceError);
}
