#include "support.hpp"

#include <algorithm>

namespace mirp::fixtures {

Instance toy1() { return generate_toy(1, 1, 12); }

std::vector<Instance> generated_suite() {
  std::vector<Instance> out;
  for (int k = 0; k < 20; ++k) {
    const auto seed = static_cast<std::uint64_t>(2 + k);
    const int consumers = 1 + k % 2;
    const int horizon = (k / 2) % 2 == 0 ? 12 : 14;
    out.push_back(generate_toy(seed, consumers, horizon));
  }
  return out;
}

std::vector<Instance> toy_suite() {
  auto out = generated_suite();
  out.insert(out.begin(), toy1());
  return out;
}

Solution random_solution(const Instance& inst, Rng& rng, int max_len) {
  const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
  std::vector<int> producers, consumers;
  for (int j = 0; j < inst.num_ports(); ++j)
    (inst.kind(j) == PortKind::Production ? producers : consumers).push_back(j);
  std::vector<bool> loaded;
  for (const auto& v : inst.vessels) loaded.push_back(v.initial_state == LoadState::Loaded);

  Solution s;
  for (int k = 0; k < len; ++k) {
    const int v = std::uniform_int_distribution<int>(0, inst.num_vessels() - 1)(rng);
    const auto& pool = loaded[static_cast<std::size_t>(v)] ? consumers : producers;
    const int port = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    s.append({port, v}, inst);
    loaded[static_cast<std::size_t>(v)] = !loaded[static_cast<std::size_t>(v)];
  }
  return s;
}

std::optional<Move> random_applicable_move(const Solution& s, const Instance& inst, Rng& rng) {
  auto order = kNeighborhoods;
  std::shuffle(order.begin(), order.end(), rng);
  for (auto nb : order) {
    auto moves = enumerate_moves(s, nb, inst);
    std::shuffle(moves.begin(), moves.end(), rng);
    for (const auto& m : moves)
      if (try_apply(s, m, inst)) return m;
  }
  return std::nullopt;
}

std::vector<std::size_t> commutable_positions(const Solution& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (independent(s[i], s[i + 1])) out.push_back(i);
  return out;
}

Solution swap_adjacent(const Solution& s, std::size_t i, const Instance& inst) {
  std::vector<Call> calls(s.calls().begin(), s.calls().end());
  std::swap(calls[i], calls[i + 1]);
  return Solution::from_calls(std::move(calls), inst);
}

}  // namespace mirp::fixtures
