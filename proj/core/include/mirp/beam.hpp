#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mirp/deadline.hpp"
#include "mirp/evaluator.hpp"
#include "mirp/greedy.hpp"
#include "mirp/money.hpp"
#include "mirp/solution.hpp"

namespace mirp {

struct BeamConfig {
  int beam_width = 100;   // N
  int max_children = 2;   // w
  GreedyConfig greedy;    // q and noise
  std::uint64_t seed = 1;
  /// Worker threads for node expansion within a level. Results do not depend on it.
  int threads = 1;
};

void validate(const BeamConfig& cfg);

struct BeamNode {
  Solution partial;
  Money score;
  int level = 0;
  /// Simulation of `partial`, shared between the node and its expansion.
  std::shared_ptr<const Simulator> state;
};

/// Keeps the best `capacity` distinct-cost completed solutions.
class SolutionPool {
 public:
  explicit SolutionPool(std::size_t capacity) : capacity_(capacity) {}

  /// Returns true if the solution entered the pool.
  bool offer(const Solution& s, Money cost);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Money best_cost() const { return entries_.front().cost; }
  const Solution& best() const { return entries_.front().solution; }

  struct Entry {
    Solution solution;
    Money cost;
  };
  /// Sorted by cost, ties by arrival order.
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::size_t capacity_;
  std::vector<Entry> entries_;
};

/// Root node: the empty solution, scored like any other node.
BeamNode make_root(const Instance& inst);

/// Children of `node`: the first max_children calls in greedy priority
/// order, each scored by greedy completions, returned sorted by score (ties
/// keep priority order). Completions are offered to `pool` when given, in
/// child order.
std::vector<BeamNode> expand(const BeamNode& node, const Instance& inst, const BeamConfig& cfg,
                             std::uint64_t node_seed, SolutionPool* pool = nullptr);

struct BeamLevelStats {
  int level = 0;
  int nodes = 0;         // survivors after dedup and selection
  int expansions = 0;    // parents expanded
  int children = 0;      // children generated before dedup
  int completions = 0;   // greedy completions run
  int duplicates = 0;    // children dropped by the score filter
  Money best_score;
  Money pool_best;
};

/// One row of the `level,node,score,pool_best` dump.
struct BeamDumpRow {
  int level;
  int node;
  Money score;
  Money pool_best;
};

struct BeamResult {
  Solution best;
  Money best_cost;
  std::vector<Solution> pool;
  std::vector<Money> pool_costs;
  std::vector<BeamLevelStats> levels;
  std::vector<BeamDumpRow> dump;
  /// False when the deadline cut the search between levels.
  bool completed = true;
};

/// Level-by-level beam search from the empty solution. Children whose score
/// already appeared at the same level are dropped; the best N survive. The
/// result is the best completed solution seen by any greedy completion.
BeamResult run_beam_search(const Instance& inst, const BeamConfig& cfg, const Deadline* deadline = nullptr);

/// Seed owned by node `index` of `level`.
std::uint64_t node_seed(std::uint64_t base, int level, int index);

}  // namespace mirp
