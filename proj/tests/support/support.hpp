#pragma once

#include <cstdint>
#include <vector>

#include "mirp/instance.hpp"
#include "mirp/localsearch.hpp"
#include "mirp/rng.hpp"
#include "mirp/solution.hpp"

namespace mirp::fixtures {

/// TOY1: one producer, one consumer, one vessel, twelve periods.
Instance toy1();

/// The 20 generated instances of the oracle suite (TOY1 excluded).
std::vector<Instance> generated_suite();

/// TOY1 followed by the generated suite.
std::vector<Instance> toy_suite();

/// Uniformly random parity-valid call sequence of at most `max_len` calls.
Solution random_solution(const Instance& inst, Rng& rng, int max_len);

/// A random move of a random neighborhood that applies to `s`, if any.
std::optional<Move> random_applicable_move(const Solution& s, const Instance& inst, Rng& rng);

/// Position pairs (i, i+1) whose calls are independent.
std::vector<std::size_t> commutable_positions(const Solution& s);

/// Same calls with positions i and i+1 exchanged.
Solution swap_adjacent(const Solution& s, std::size_t i, const Instance& inst);

}  // namespace mirp::fixtures
