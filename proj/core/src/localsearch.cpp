#include "mirp/localsearch.hpp"

#include <algorithm>

#include "mirp/evaluator.hpp"

namespace mirp {

std::string_view name(Neighborhood n) {
  switch (n) {
    case Neighborhood::Swap: return "swap";
    case Neighborhood::Relocate: return "relocate";
    case Neighborhood::Replace: return "replace";
    case Neighborhood::Insert: return "insert";
    case Neighborhood::Remove: return "remove";
    case Neighborhood::SwapPort: return "swap-port";
  }
  return "?";
}

std::size_t change_point(const Solution& s, const Move& m) {
  switch (m.kind) {
    case Neighborhood::Swap:
    case Neighborhood::Relocate:
    case Neighborhood::SwapPort: return static_cast<std::size_t>(std::max(0, std::min(m.a, m.b)));
    case Neighborhood::Replace:
    case Neighborhood::Remove: return static_cast<std::size_t>(std::max(0, m.a));
    case Neighborhood::Insert: return s.size();
  }
  return 0;
}

namespace {

bool pos_ok(const Solution& s, int i) { return i >= 0 && static_cast<std::size_t>(i) < s.size(); }

std::optional<std::vector<Call>> rewrite(const Solution& s, const Move& m, const Instance& inst) {
  std::vector<Call> calls(s.calls().begin(), s.calls().end());
  switch (m.kind) {
    case Neighborhood::Swap:
      if (!pos_ok(s, m.a) || !pos_ok(s, m.b)) return std::nullopt;
      std::swap(calls[m.a], calls[m.b]);
      break;
    case Neighborhood::Relocate: {
      if (!pos_ok(s, m.a) || !pos_ok(s, m.b)) return std::nullopt;
      const Call moved = calls[m.a];
      calls.erase(calls.begin() + m.a);
      calls.insert(calls.begin() + m.b, moved);
      break;
    }
    case Neighborhood::Replace:
      if (!pos_ok(s, m.a) || m.b < 0 || m.b >= inst.num_ports()) return std::nullopt;
      if (inst.kind(m.b) != inst.kind(calls[m.a].port)) return std::nullopt;
      calls[m.a].port = m.b;
      break;
    case Neighborhood::Insert: {
      if (m.a < 0 || m.a >= inst.num_vessels()) return std::nullopt;
      if (m.b < 0 || m.b >= inst.num_ports() || m.c < 0 || m.c >= inst.num_ports()) return std::nullopt;
      if (inst.kind(m.b) != PortKind::Production || inst.kind(m.c) != PortKind::Consumption) return std::nullopt;
      const Call load{m.b, m.a};
      const Call discharge{m.c, m.a};
      if (next_kind_after(s.calls(), m.a, inst) == PortKind::Production) {
        calls.push_back(load);
        calls.push_back(discharge);
      } else {
        calls.push_back(discharge);
        calls.push_back(load);
      }
      break;
    }
    case Neighborhood::Remove: {
      if (!pos_ok(s, m.a)) return std::nullopt;
      const int next = s.next_vessel(static_cast<std::size_t>(m.a));
      if (next != kNone) calls.erase(calls.begin() + next);
      calls.erase(calls.begin() + m.a);
      break;
    }
    case Neighborhood::SwapPort: {
      if (!pos_ok(s, m.a) || !pos_ok(s, m.b)) return std::nullopt;
      auto& x = calls[m.a];
      auto& y = calls[m.b];
      if (x.vessel == y.vessel || inst.kind(x.port) != inst.kind(y.port)) return std::nullopt;
      std::swap(x.port, y.port);
      break;
    }
  }
  if (!parity_valid(calls, inst)) return std::nullopt;
  return calls;
}

}  // namespace

std::optional<Solution> try_apply(const Solution& s, const Move& m, const Instance& inst) {
  auto calls = rewrite(s, m, inst);
  if (!calls) return std::nullopt;
  Solution out = Solution::from_calls(std::move(*calls), inst);
  if (s.cache()) {
    const std::size_t keep = std::min(s.valid_prefix(), change_point(s, m));
    out.set_cache(s.cache());
    out.invalidate_from(keep);
  }
  return out;
}

Solution apply_move(const Solution& s, const Move& m, const Instance& inst) {
  auto out = try_apply(s, m, inst);
  if (!out)
    throw MoveError(std::string(name(m.kind)) + " move (" + std::to_string(m.a) + "," + std::to_string(m.b) + "," +
                    std::to_string(m.c) + ") is out of range or breaks vessel parity");
  return std::move(*out);
}

std::vector<Move> enumerate_moves(const Solution& s, Neighborhood n, const Instance& inst) {
  std::vector<Move> out;
  const int len = static_cast<int>(s.size());
  switch (n) {
    case Neighborhood::Swap:
      for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j)
          if (s[i] != s[j]) out.push_back({n, i, j});
      break;
    case Neighborhood::Relocate:
      for (int i = 0; i < len; ++i)
        for (int j = 0; j < len; ++j)
          if (i != j) out.push_back({n, i, j});
      break;
    case Neighborhood::Replace:
      for (int i = 0; i < len; ++i)
        for (int p = 0; p < inst.num_ports(); ++p)
          if (p != s[i].port && inst.kind(p) == inst.kind(s[i].port)) out.push_back({n, i, p});
      break;
    case Neighborhood::Insert:
      for (int v = 0; v < inst.num_vessels(); ++v)
        for (int p = 0; p < inst.num_ports(); ++p) {
          if (inst.kind(p) != PortKind::Production) continue;
          for (int c = 0; c < inst.num_ports(); ++c)
            if (inst.kind(c) == PortKind::Consumption) out.push_back({n, v, p, c});
        }
      break;
    case Neighborhood::Remove:
      for (int i = 0; i < len; ++i) out.push_back({n, i});
      break;
    case Neighborhood::SwapPort:
      for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j)
          if (s[i].vessel != s[j].vessel && s[i].port != s[j].port && inst.kind(s[i].port) == inst.kind(s[j].port))
            out.push_back({n, i, j});
      break;
  }
  return out;
}

namespace {

// No occurrence, or the occurrence lies beyond `bound` in the given direction.
bool after(int ptr, int bound) { return ptr == kNone || ptr > bound; }
bool before(int ptr, int bound) { return ptr == kNone || ptr < bound; }

}  // namespace

bool is_redundant(const Solution& s, const Move& m) {
  if (!pos_ok(s, m.a) || !pos_ok(s, m.b) || m.a == m.b) return false;
  const auto a = static_cast<std::size_t>(m.a);
  const auto b = static_cast<std::size_t>(m.b);
  switch (m.kind) {
    case Neighborhood::Swap: {
      const auto i = std::min(a, b), j = std::max(a, b);
      const int ii = static_cast<int>(i), jj = static_cast<int>(j);
      return after(s.next_vessel(i), jj) && after(s.next_port(i), jj) && before(s.prev_vessel(j), ii) &&
             before(s.prev_port(j), ii);
    }
    case Neighborhood::Relocate:
      if (a < b) return after(s.next_vessel(a), m.b) && after(s.next_port(a), m.b);
      return before(s.prev_vessel(a), m.b) && before(s.prev_port(a), m.b);
    default: return false;
  }
}

Solution rvnd(Solution s, const Instance& inst, std::uint64_t seed, RvndStats* stats) {
  Rng rng(seed);
  RvndStats local;
  Money current = ensure_evaluated(s, inst).total_cost;
  local.start_cost = current;
  auto order = kNeighborhoods;
  bool improved = true;
  while (improved) {
    improved = false;
    std::shuffle(order.begin(), order.end(), rng);
    for (const auto nb : order) {
      auto moves = enumerate_moves(s, nb, inst);
      std::shuffle(moves.begin(), moves.end(), rng);
      for (const auto& m : moves) {
        if (is_redundant(s, m)) {
          ++local.skipped_redundant;
          continue;
        }
        auto cand = try_apply(s, m, inst);
        if (!cand) continue;
        ++local.evaluations;
        const Money cost = ensure_evaluated(*cand, inst).total_cost;
        if (cost < current) {
          s = std::move(*cand);
          current = cost;
          ++local.improvements;
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
  }
  local.end_cost = current;
  if (stats) *stats = local;
  return s;
}

}  // namespace mirp
