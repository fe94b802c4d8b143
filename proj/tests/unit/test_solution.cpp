#include <gtest/gtest.h>

#include <queue>
#include <set>
#include <sstream>

#include "mirp/evaluator.hpp"
#include "mirp/solution.hpp"
#include "support.hpp"

using namespace mirp;

namespace {

// Pointer oracle: linear scans.
int scan(const Solution& s, std::size_t i, int step, bool by_vessel) {
  for (long k = static_cast<long>(i) + step; k >= 0 && k < static_cast<long>(s.size()); k += step) {
    const auto& c = s[static_cast<std::size_t>(k)];
    if (by_vessel ? c.vessel == s[i].vessel : c.port == s[i].port) return static_cast<int>(k);
  }
  return kNone;
}

// Commutation oracle: breadth-first search over adjacent independent swaps.
bool reachable(const std::vector<Call>& from, const std::vector<Call>& to) {
  std::set<std::vector<Call>> seen{from};
  std::queue<std::vector<Call>> q;
  q.push(from);
  while (!q.empty()) {
    auto cur = q.front();
    q.pop();
    if (cur == to) return true;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (!independent(cur[i], cur[i + 1])) continue;
      auto next = cur;
      std::swap(next[i], next[i + 1]);
      if (seen.insert(next).second) q.push(next);
    }
  }
  return false;
}

}  // namespace

TEST(Solution, PointersMatchLinearScan) {
  Rng rng(11);
  for (const auto& inst : fixtures::toy_suite()) {
    for (int trial = 0; trial < 50; ++trial) {
      const Solution s = fixtures::random_solution(inst, rng, 14);
      for (std::size_t i = 0; i < s.size(); ++i) {
        ASSERT_EQ(s.prev_vessel(i), scan(s, i, -1, true));
        ASSERT_EQ(s.next_vessel(i), scan(s, i, +1, true));
        ASSERT_EQ(s.prev_port(i), scan(s, i, -1, false));
        ASSERT_EQ(s.next_port(i), scan(s, i, +1, false));
      }
    }
  }
}

TEST(Solution, AppendAgreesWithFromCalls) {
  Rng rng(12);
  const Instance inst = generate_toy(5, 2, 14);
  for (int trial = 0; trial < 100; ++trial) {
    const Solution s = fixtures::random_solution(inst, rng, 12);
    const Solution t = Solution::from_calls({s.calls().begin(), s.calls().end()}, inst);
    EXPECT_TRUE(s.same_calls(t));
    EXPECT_EQ(s.prev_vessel_ptrs(), t.prev_vessel_ptrs());
    EXPECT_EQ(s.next_vessel_ptrs(), t.next_vessel_ptrs());
    EXPECT_EQ(s.prev_port_ptrs(), t.prev_port_ptrs());
    EXPECT_EQ(s.next_port_ptrs(), t.next_port_ptrs());
  }
}

TEST(Solution, ParityIsEnforced) {
  const Instance inst = fixtures::toy1();
  EXPECT_THROW(Solution::from_calls({{1, 0}}, inst), ParityError);
  EXPECT_THROW(Solution::from_calls({{0, 0}, {0, 0}}, inst), ParityError);
  EXPECT_NO_THROW(Solution::from_calls({{0, 0}, {1, 0}, {0, 0}}, inst));
  EXPECT_THROW(Solution::from_calls({{0, 5}}, inst), ParityError);

  Solution s;
  s.append({0, 0}, inst);
  EXPECT_THROW(s.append({0, 0}, inst), ParityError);
  EXPECT_EQ(s.size(), 1u);
}

TEST(Solution, LoadedVesselStartsAtConsumer) {
  const Instance inst = generate_toy(3, 2, 12);
  ASSERT_EQ(inst.vessels[1].initial_state, LoadState::Loaded);
  int consumer = -1, producer = -1;
  for (int j = 0; j < inst.num_ports(); ++j) (inst.kind(j) == PortKind::Consumption ? consumer : producer) = j;
  EXPECT_EQ(next_kind_after({}, 1, inst), PortKind::Consumption);
  EXPECT_THROW(Solution::from_calls({{producer, 1}}, inst), ParityError);
  EXPECT_NO_THROW(Solution::from_calls({{consumer, 1}, {producer, 1}}, inst));
}

TEST(Solution, SerializationRoundTrip) {
  Rng rng(13);
  const Instance inst = generate_toy(7, 2, 12);
  for (int trial = 0; trial < 50; ++trial) {
    Solution s = fixtures::random_solution(inst, rng, 12);
    ensure_evaluated(s, inst);
    std::stringstream ss;
    write_solution(ss, s, s.truncation_mask());
    const Solution back = read_solution(ss, inst);
    EXPECT_TRUE(back.same_calls(s));
  }
}

TEST(Solution, TruncationMarkerIsWritten) {
  const Instance inst = fixtures::toy1();
  Solution s = Solution::from_calls({{0, 0}, {1, 0}, {0, 0}, {1, 0}, {0, 0}, {1, 0}}, inst);
  ensure_evaluated(s, inst);
  std::stringstream ss;
  write_solution(ss, s, s.truncation_mask());
  EXPECT_NE(ss.str().find("#truncated"), std::string::npos);
  EXPECT_EQ(ss.str().rfind("0,0\n", 0), 0u);
}

TEST(Solution, MalformedFileIsRejected) {
  const Instance inst = fixtures::toy1();
  std::istringstream bad("0,0\nbanana\n");
  EXPECT_THROW(read_solution(bad, inst), std::runtime_error);
  std::istringstream parity("1,0\n");
  EXPECT_THROW(read_solution(parity, inst), ParityError);
}

TEST(Solution, CommutationEquivalenceMatchesSearch) {
  Rng rng(14);
  const Instance inst = generate_toy(5, 2, 14);
  int positives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Solution a = fixtures::random_solution(inst, rng, 6);
    std::vector<Call> calls(a.calls().begin(), a.calls().end());
    // Half the time shuffle by commutations (equivalent), otherwise permute freely.
    if (trial % 2 == 0) {
      for (int k = 0; k < 6; ++k) {
        auto pos = fixtures::commutable_positions(Solution::from_calls(calls, inst));
        if (pos.empty()) break;
        const auto p = pos[rng() % pos.size()];
        std::swap(calls[p], calls[p + 1]);
      }
    } else {
      std::shuffle(calls.begin(), calls.end(), rng);
    }
    if (!parity_valid(calls, inst)) continue;
    const Solution b = Solution::from_calls(calls, inst);
    const bool expected = reachable({a.calls().begin(), a.calls().end()}, calls);
    positives += expected;
    ASSERT_EQ(equivalent_under_commutation(a, b), expected);
  }
  EXPECT_GT(positives, 20);
}
