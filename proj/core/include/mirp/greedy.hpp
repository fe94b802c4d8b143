#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mirp/evaluator.hpp"
#include "mirp/money.hpp"
#include "mirp/rng.hpp"
#include "mirp/solution.hpp"

namespace mirp {

struct GreedyConfig {
  /// Completions per score: one deterministic plus q-1 randomized.
  int q = 3;
  /// Noise standard deviation as a fraction of the candidate key spread.
  double sigma_frac = 0.25;
  bool randomize_port = true;
  bool randomize_vessel = false;
};

void validate(const GreedyConfig& cfg);

/// Gaussian perturbation of the greedy selection keys.
struct SelectionNoise {
  Rng* rng = nullptr;
  double sigma_frac = 0.0;
  bool port = false;
  bool vessel = false;
};

/// Calls the greedy rule would append next, best first, at most `limit`.
///
/// Ports are ranked by the first period they need spot charter (their
/// violation time; ports that never do are not candidates), then by id. For
/// each port in that order, every vessel that can serve it is ranked by the
/// earliest berth start it can obtain there, then by id. A vessel whose load
/// state does not match the port first needs an enabling visit to a port of
/// the other kind, and that enabling call is what gets emitted. An empty
/// result means the greedy stops.
std::vector<Call> prioritized_calls(const Simulator& state, std::size_t limit,
                                    SelectionNoise* noise = nullptr);

struct Completion {
  Solution solution;
  Money cost;
};

/// Greedy completion starting from `state`, which must be the simulation of
/// `prefix`. The returned solution carries its evaluation.
Completion complete_from(const Simulator& state, std::span<const Call> prefix, SelectionNoise* noise = nullptr);

Solution complete_deterministic(const Solution& partial, const Instance& inst);
Solution complete_randomized(const Solution& partial, const Instance& inst, const GreedyConfig& cfg,
                             std::uint64_t seed);

struct PartialScore {
  /// Lower median of the completion costs.
  Money score;
  /// completions[0] is the deterministic one; completions[k] used seed + k.
  std::vector<Completion> completions;
  std::size_t best_index = 0;
};

/// Median cost of one deterministic and q-1 randomized completions.
PartialScore score_from(const Simulator& state, std::span<const Call> prefix, const GreedyConfig& cfg,
                        std::uint64_t seed);
PartialScore score_partial(const Solution& partial, const Instance& inst, const GreedyConfig& cfg,
                           std::uint64_t seed);

/// Lower median (element floor((n-1)/2) after sorting).
Money lower_median(std::vector<Money> values);

}  // namespace mirp
