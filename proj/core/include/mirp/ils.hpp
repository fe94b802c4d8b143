#pragma once

#include <cstdint>
#include <vector>

#include "mirp/deadline.hpp"
#include "mirp/localsearch.hpp"
#include "mirp/money.hpp"
#include "mirp/rng.hpp"
#include "mirp/solution.hpp"

namespace mirp {

struct IlsConfig {
  int iterations = 640;
  int non_improving_limit = 4;
  int perturbations = 2;
  double sa_p_initial = 0.79;
  double sa_p_final = 0.01;
  /// Reference deterioration, as a fraction of the best cost, that is
  /// accepted with exactly the scheduled probability.
  double delta_ref_frac = 0.01;
  std::uint64_t seed = 1;
};

void validate(const IlsConfig& cfg);

/// Scheduled acceptance probability for a reference deterioration at
/// iteration `iter` (1-based): linear from sa_p_initial to sa_p_final.
double acceptance_probability(const IlsConfig& cfg, int iter);

/// Temperature such that a deterioration of `delta_ref` is accepted with
/// probability acceptance_probability(cfg, iter). Zero when delta_ref <= 0.
double temperature(const IlsConfig& cfg, int iter, double delta_ref);

struct PerturbOutcome {
  Solution solution;
  std::vector<Move> applied;
};

/// Applies cfg.perturbations random moves. Each picks a neighborhood
/// uniformly among those not yet found empty, then a uniformly random
/// applicable, non-redundant move in it.
PerturbOutcome perturb(const Solution& s, const Instance& inst, const IlsConfig& cfg, Rng& rng);

struct IlsTraceRow {
  int iter;
  Money current_cost;
  Money best_cost;
  bool accepted;
  double temperature;
  bool restored;
};

struct IlsResult {
  Solution best;
  Money best_cost;
  std::vector<IlsTraceRow> trace;
  int restores = 0;
  int rvnd_calls = 0;
  /// Descents that ended above their starting cost; zero unless RVND is broken.
  int rvnd_increases = 0;
  /// False when the deadline stopped the run early.
  bool completed = true;
};

/// Iterated local search: perturb, descend with RVND, accept by simulated
/// annealing, restore the best after too many accepted non-improving steps.
IlsResult run_ils(const Solution& incumbent, const Instance& inst, const IlsConfig& cfg,
                  const Deadline* deadline = nullptr);

}  // namespace mirp
