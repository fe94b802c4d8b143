#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mirp/money.hpp"
#include "mirp/rng.hpp"
#include "mirp/solution.hpp"

namespace mirp {

enum class Neighborhood { Swap, Relocate, Replace, Insert, Remove, SwapPort };

inline constexpr std::array<Neighborhood, 6> kNeighborhoods = {
    Neighborhood::Swap,   Neighborhood::Relocate, Neighborhood::Replace,
    Neighborhood::Insert, Neighborhood::Remove,   Neighborhood::SwapPort};

std::string_view name(Neighborhood n);

/// Operands by kind:
///   Swap(a, b)          positions a < b exchange their calls
///   Relocate(a, b)      the call at a ends up at position b
///   Replace(a, b)       call a now visits port b (same kind)
///   Insert(a, b, c)     vessel a gets production port b and consumption port c
///                       appended, in the order its load state requires
///   Remove(a)           call a and the next call of its vessel are deleted
///                       (only call a if it is the vessel's last)
///   SwapPort(a, b)      calls a and b of different vessels exchange ports
struct Move {
  Neighborhood kind = Neighborhood::Swap;
  int a = -1;
  int b = -1;
  int c = -1;

  bool operator==(const Move&) const = default;
};

class MoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Earliest position whose call or schedule can change under `m`.
std::size_t change_point(const Solution& s, const Move& m);

/// Applies `m`; nullopt when operands are out of range or the result breaks
/// vessel parity. The result's evaluation cache is kept for the untouched prefix.
std::optional<Solution> try_apply(const Solution& s, const Move& m, const Instance& inst);

/// As try_apply, but throws MoveError instead of returning nullopt.
Solution apply_move(const Solution& s, const Move& m, const Instance& inst);

/// Candidate moves of one neighborhood in canonical order. Candidates may
/// still be rejected by try_apply.
std::vector<Move> enumerate_moves(const Solution& s, Neighborhood n, const Instance& inst);

/// Swap and Relocate candidates that only reorder calls independent of every
/// call they jump over. Such moves cannot change the cost.
bool is_redundant(const Solution& s, const Move& m);

struct RvndStats {
  int improvements = 0;
  long evaluations = 0;
  long skipped_redundant = 0;
  Money start_cost;
  Money end_cost;
};

/// Randomized variable neighborhood descent with first improvement. Returns a
/// solution whose cost is not greater than the input's; the result carries
/// its evaluation.
Solution rvnd(Solution s, const Instance& inst, std::uint64_t seed, RvndStats* stats = nullptr);

}  // namespace mirp
