#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirp/evaluator.hpp"
#include "mirp/money.hpp"
#include "mirp/solution.hpp"

namespace mirp {

/// Node of the time-expanded network: (port, period) or one of the two
/// virtual nodes.
struct Node {
  static constexpr int kSource = -1;
  static constexpr int kSink = -2;

  int port = kSource;
  int t = 0;

  auto operator<=>(const Node&) const = default;
};

enum class ArcKind { Source, Sink, Waiting, InterRegional, Ballast };

/// One arc with the aggregate flow of a vessel class. `operates` marks the
/// arc leaving (j, t) right after an operation that ended in period t: it
/// carries the cargo transfer at (j, t) and the port fee of j.
struct Arc {
  ArcKind kind = ArcKind::Waiting;
  Node from;
  Node to;
  bool operates = false;
  int flow = 0;

  bool operator==(const Arc&) const = default;
};

struct ArcFlow {
  /// arcs[class], sorted by (from, to, kind, operates); parallel arcs merged.
  std::vector<std::vector<Arc>> arcs;
  /// Spot charter per (port, t), t = 0..T, as charged by the evaluator.
  std::vector<std::vector<double>> spot_charter;
};

class ArcFlowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vessel paths through the network. Truncated calls are dropped. Throws
/// ArcFlowError if `eval` was not produced for `s`.
ArcFlow schedule_to_arcflow(const Solution& s, const EvalResult& eval, const Instance& inst);

struct FlowResidual {
  int vessel_class;
  Node node;
  int residual;  // inflow - outflow + supply
};

struct InventoryResidual {
  int port;
  int t;
  double balance;  // evaluator level minus recomputed level
  double bound;    // distance of the recomputed level outside [min, max]
};

struct BerthResidual {
  int port;
  int t;
  int excess;  // berths in use beyond the limit
};

/// Nonzero residuals only; a clean solution leaves every list empty.
struct ValidatorReport {
  std::vector<FlowResidual> flow_balance;
  std::vector<InventoryResidual> inventory;
  std::vector<BerthResidual> berth;
  std::vector<std::string> domain;
  /// Recomputed model objective (a maximisation of negative cost).
  Money objective;
  Money evaluator_total;
  /// |objective + evaluator_total| in money units.
  double difference = 0.0;
  bool matches_evaluator = false;

  bool clean() const { return flow_balance.empty() && inventory.empty() && berth.empty() && domain.empty(); }
};

/// Checks an arc flow against the model constraints and recomputes the
/// objective. `eval` supplies the inventories to compare against and the
/// total the objective must match.
ValidatorReport check_arcflow(const ArcFlow& flow, const EvalResult& eval, const Instance& inst);

/// Evaluates `s` from scratch, converts it and checks it.
ValidatorReport check(const Solution& s, const Instance& inst);

/// Human-readable summary, one line per violation.
std::string describe(const ValidatorReport& r);

class SearchSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteForceResult {
  Solution solution;
  Money cost;
  long long nodes = 0;
};

inline constexpr long long kBruteForceNodeLimit = 10'000'000;

/// Exhaustive minimum over call sequences of at most `max_calls` calls
/// (unbounded when empty; the horizon bounds it anyway). Only sequences
/// without truncated calls are enumerated, and of every run of adjacent
/// independent calls only the ordering ascending by (port, vessel); neither
/// restriction removes a cost. Throws SearchSpaceError once more than
/// `node_limit` sequences have been visited.
BruteForceResult brute_force_optimum(const Instance& inst, std::optional<int> max_calls = std::nullopt,
                                     long long node_limit = kBruteForceNodeLimit);

}  // namespace mirp
