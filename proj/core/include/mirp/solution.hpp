#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mirp/instance.hpp"

namespace mirp {

/// One port visit by one vessel.
struct Call {
  int port = 0;
  int vessel = 0;

  auto operator<=>(const Call&) const = default;
};

/// Two calls commute when they touch neither the same port nor the same vessel.
inline bool independent(const Call& a, const Call& b) {
  return a.port != b.port && a.vessel != b.vessel;
}

class ParityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalCache;  // evaluator.hpp

/// Sentinel for absent pointers.
inline constexpr int kNone = -1;

/// Ordered call sequence with, per position, the previous/next position that
/// uses the same vessel and the same port.
///
/// Every vessel's chain alternates production and consumption ports, starting
/// with a production port when the vessel is initially empty. Construction
/// rejects anything else. The solution also carries an optional evaluation
/// cache together with the length of the prefix the cache still describes.
class Solution {
 public:
  Solution() = default;

  /// Throws ParityError naming the first offending position.
  static Solution from_calls(std::vector<Call> calls, const Instance& inst);

  /// O(1) amortised. Throws ParityError if `c` repeats the vessel's last port kind.
  void append(Call c, const Instance& inst);

  std::span<const Call> calls() const { return calls_; }
  std::size_t size() const { return calls_.size(); }
  bool empty() const { return calls_.empty(); }
  const Call& operator[](std::size_t i) const { return calls_[i]; }

  int prev_vessel(std::size_t i) const { return prev_vessel_[i]; }
  int next_vessel(std::size_t i) const { return next_vessel_[i]; }
  int prev_port(std::size_t i) const { return prev_port_[i]; }
  int next_port(std::size_t i) const { return next_port_[i]; }

  const std::vector<int>& prev_vessel_ptrs() const { return prev_vessel_; }
  const std::vector<int>& next_vessel_ptrs() const { return next_vessel_; }
  const std::vector<int>& prev_port_ptrs() const { return prev_port_; }
  const std::vector<int>& next_port_ptrs() const { return next_port_; }

  /// Last position served by `vessel`, or kNone.
  int last_of_vessel(int vessel) const;

  /// Recomputes all four pointer arrays from scratch.
  void rebuild_pointers(const Instance& inst);

  /// Cached evaluation, valid for positions < valid_prefix().
  const std::shared_ptr<const EvalCache>& cache() const { return cache_; }
  std::size_t valid_prefix() const { return valid_prefix_; }
  void set_cache(std::shared_ptr<const EvalCache> cache) {
    cache_ = std::move(cache);
    valid_prefix_ = calls_.size();
  }
  void drop_cache() {
    cache_.reset();
    valid_prefix_ = 0;
  }
  /// Marks everything from `position` on as stale.
  void invalidate_from(std::size_t position) {
    if (position < valid_prefix_) valid_prefix_ = position;
  }

  /// Per-position "beyond horizon" flag from the cached evaluation; empty
  /// when no complete evaluation is cached.
  std::vector<bool> truncation_mask() const;

  /// Calls only; caches and pointers follow from them.
  bool same_calls(const Solution& o) const { return calls_ == o.calls_; }

 private:
  friend Solution rebuild_pointers(Solution s, const Instance& inst);

  std::vector<Call> calls_;
  std::vector<int> prev_vessel_, next_vessel_, prev_port_, next_port_;
  std::vector<int> last_vessel_pos_, last_port_pos_;
  std::shared_ptr<const EvalCache> cache_;
  std::size_t valid_prefix_ = 0;
};

/// True when every vessel chain in `calls` alternates kinds correctly and all
/// indices resolve.
bool parity_valid(std::span<const Call> calls, const Instance& inst);

/// Kind of the next port `vessel` must visit after `calls`.
PortKind next_kind_after(std::span<const Call> calls, int vessel, const Instance& inst);

Solution rebuild_pointers(Solution s, const Instance& inst);

/// True iff `b` can be obtained from `a` by swapping adjacent independent calls.
bool equivalent_under_commutation(const Solution& a, const Solution& b);

/// One call per line: `port_id,vessel_id`, optionally followed by ` #truncated`
/// when `mask` flags the position.
void write_solution(std::ostream& out, const Solution& s, const std::vector<bool>& mask = {});

/// Reads the format written by write_solution. Markers are ignored. Throws
/// std::runtime_error on malformed lines and ParityError on parity violations.
Solution read_solution(std::istream& in, const Instance& inst);

}  // namespace mirp
