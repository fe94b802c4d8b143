#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mirp/instance.hpp"
#include "mirp/money.hpp"
#include "mirp/solution.hpp"

namespace mirp {

/// Timing of one call. Times are period boundaries 0..T: a berth occupies
/// periods berth_start+1 .. berth_end and the cargo moves in period berth_end.
struct CallSchedule {
  Call call;
  int arrival = -1;
  int berth_start = -1;
  int berth_end = -1;
  bool truncated = false;

  bool operator==(const CallSchedule&) const = default;
};

struct EvalResult {
  std::vector<CallSchedule> schedule;
  /// inventory[j][t], t = 0..T; entry 0 is the initial stock.
  std::vector<std::vector<double>> inventory;
  /// spot_charter[j][t], t = 0..T; entry 0 is always zero.
  std::vector<std::vector<double>> spot_charter;
  Money routing_cost;
  Money penalty_cost;
  Money reward_credit;
  Money total_cost;
  int truncated_count = 0;
  /// Latest berth_end over non-truncated calls; the horizon when there are none.
  int last_berth_end = 0;

  bool operator==(const EvalResult&) const = default;
};

/// Leg cost in money: distance term (discounted when travelling empty).
Money leg_cost(const Instance& inst, int vessel, int from, int to, bool loaded);
Money port_fee(const Instance& inst, int port);
Money spot_charter_cost(const Instance& inst, int port, int period, double amount);
Money early_finish_reward(const Instance& inst, int last_berth_end);

/// Forward schedule simulation of a call sequence, one call at a time.
///
/// Scheduling rule for a call (j, v):
///  - arrival = time v becomes free plus travel time from its current port
///    (the vessel's ready time at its start port for the first call);
///  - berth_start = earliest period >= arrival that is not before any earlier
///    call at j (FIFO), leaves a berth free for op_duration periods, and lets
///    the full cargo move without pushing the inventory past the bound the
///    operation moves it towards (a load needs stock, a discharge needs room);
///  - if no such start ends by the horizon the call is truncated, contributes
///    nothing, and so is every later call of that vessel.
/// Inventories are clamped to [min, max] every period; the clamped amount is
/// the spot charter of that period.
class Simulator {
 public:
  explicit Simulator(const Instance& inst);

  struct Slot {
    int arrival;
    int berth_start;
    int berth_end;
  };

  const Instance& instance() const { return *inst_; }

  /// Where `c` would be served if appended now; nullopt if it would be
  /// truncated. Does not check parity.
  std::optional<Slot> probe(Call c) const;

  /// Earliest feasible start at `port` for a vessel of capacity `quantity`
  /// that reaches the port at `arrival`.
  std::optional<int> earliest_start(int port, int arrival, double quantity) const;

  /// Appends a call. Throws ParityError if the vessel is in the wrong load state.
  const CallSchedule& push(Call c);

  std::size_t size() const { return schedule_.size(); }

  bool vessel_done(int v) const { return vessels_[v].done; }
  bool vessel_loaded(int v) const { return vessels_[v].loaded; }
  int vessel_port(int v) const { return vessels_[v].port; }
  int vessel_free_at(int v) const { return vessels_[v].free_at; }
  bool vessel_started(int v) const { return vessels_[v].started; }
  PortKind next_kind(int v) const {
    return vessels_[v].loaded ? PortKind::Consumption : PortKind::Production;
  }
  /// Arrival time of vessel `v` at `port` if it left now.
  int arrival_at(int v, int port) const;

  /// First period t, not before the last operation already scheduled at the
  /// port, in which spot charter is needed. T+1 if none.
  int violation_time(int port) const;

  const std::vector<double>& inventory(int port) const { return ports_[port].level; }
  const std::vector<double>& spot_charter(int port) const { return ports_[port].alpha; }

  Money routing_cost() const { return routing_; }

  /// Completes the accounting and returns the full result.
  EvalResult finish() const;

 private:
  struct VesselState {
    int port = 0;
    int free_at = 0;
    bool loaded = false;
    bool done = false;
    bool started = false;
  };
  struct PortState {
    std::vector<double> level;     // 0..T
    std::vector<double> transfer;  // 0..T, signed cargo moved in period t
    std::vector<double> alpha;     // 0..T
    std::vector<int> busy;         // 0..T, berths in use in period t
    int fifo_floor = 0;
    int last_end = 0;
  };

  void settle(int port, int from);

  const Instance* inst_;
  std::vector<VesselState> vessels_;
  std::vector<PortState> ports_;
  std::vector<CallSchedule> schedule_;
  Money routing_;
  int last_end_ = -1;
  int truncated_ = 0;
};

/// Evaluation cache stored inside a Solution: the result plus simulator
/// snapshots taken every `kCheckpointStride` calls.
struct EvalCache {
  static constexpr std::size_t kCheckpointStride = 8;

  const Instance* instance = nullptr;
  EvalResult result;
  /// checkpoints[k] is the simulator state after the first k*stride calls.
  std::vector<std::shared_ptr<const Simulator>> checkpoints;
};

/// From-scratch reference evaluation.
EvalResult evaluate_full(const Solution& s, const Instance& inst);

struct IncrementalOutcome {
  EvalResult result;
  /// True when the cache was missing, stale or built for another instance
  /// and the full path was used instead.
  bool fell_back = false;
  /// Number of leading calls that were not re-simulated.
  std::size_t reused_prefix = 0;
};

/// Re-simulates from the last checkpoint at or before `change_point` (capped
/// by the solution's valid prefix). Bit-identical to evaluate_full.
IncrementalOutcome evaluate_incremental(const Solution& s, const Instance& inst, std::size_t change_point);

/// Evaluates `s` (incrementally when possible), stores the cache in `s` and
/// returns the result.
const EvalResult& ensure_evaluated(Solution& s, const Instance& inst);

/// Builds a cache by simulating `calls` starting from `start` (a snapshot of
/// the first `start_index` calls). `checkpoints` holds the snapshots already
/// known for that prefix.
std::shared_ptr<const EvalCache> simulate_with_checkpoints(
    const Instance& inst, Simulator start, std::size_t start_index, std::span<const Call> calls,
    std::vector<std::shared_ptr<const Simulator>> checkpoints);

/// 100 * (cost - best_known) / best_known. Throws std::invalid_argument when
/// best_known <= 0.
double gap_percent(Money cost, Money best_known);

/// Two-decimal rendering of a percentage with -0.00 folded to 0.00.
std::string format_percent(double pct);

/// Debug trace: `t,port,inventory,alpha` per period per port, then
/// `call_idx,vessel,port,arrival,start,end` per call.
void write_trace(std::ostream& out, const EvalResult& r);

}  // namespace mirp
