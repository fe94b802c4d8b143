#include "mirp/beam.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace mirp {

void validate(const BeamConfig& cfg) {
  if (cfg.beam_width < 1) throw std::invalid_argument("beam: beam_width must be at least 1");
  if (cfg.max_children < 1) throw std::invalid_argument("beam: max_children must be at least 1");
  if (cfg.threads < 1) throw std::invalid_argument("beam: threads must be at least 1");
  validate(cfg.greedy);
}

bool SolutionPool::offer(const Solution& s, Money cost) {
  if (capacity_ == 0) return false;
  for (const auto& e : entries_)
    if (e.cost == cost) return false;
  if (entries_.size() == capacity_ && !(cost < entries_.back().cost)) return false;
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), cost,
                              [](Money c, const Entry& e) { return c < e.cost; });
  entries_.insert(pos, Entry{s, cost});
  if (entries_.size() > capacity_) entries_.pop_back();
  return true;
}

std::uint64_t node_seed(std::uint64_t base, int level, int index) {
  return derive_seed(base, {static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(index)});
}

BeamNode make_root(const Instance& inst) {
  BeamNode root;
  root.state = std::make_shared<const Simulator>(inst);
  return root;
}

namespace {

struct ScoredChild {
  BeamNode node;
  std::vector<Completion> completions;  // those worth offering to the pool
  int completions_run = 0;
};

std::vector<ScoredChild> expand_scored(const BeamNode& node, const Instance& inst, const BeamConfig& cfg,
                                       std::uint64_t seed, std::optional<Money> keep_below) {
  std::vector<ScoredChild> out;
  const auto calls = prioritized_calls(*node.state, static_cast<std::size_t>(cfg.max_children));
  out.reserve(calls.size());
  for (std::size_t k = 0; k < calls.size(); ++k) {
    auto state = std::make_shared<Simulator>(*node.state);
    state->push(calls[k]);
    ScoredChild child;
    child.node.partial = node.partial;
    child.node.partial.drop_cache();
    child.node.partial.append(calls[k], inst);
    child.node.level = node.level + 1;
    auto score = score_from(*state, child.node.partial.calls(), cfg.greedy,
                            derive_seed(seed, {static_cast<std::uint64_t>(k)}));
    child.node.score = score.score;
    child.node.state = std::move(state);
    child.completions_run = static_cast<int>(score.completions.size());
    for (auto& c : score.completions)
      if (!keep_below || c.cost < *keep_below) child.completions.push_back(std::move(c));
    out.push_back(std::move(child));
  }
  return out;
}

void sort_by_score(std::vector<ScoredChild>& kids) {
  std::stable_sort(kids.begin(), kids.end(),
                   [](const ScoredChild& a, const ScoredChild& b) { return a.node.score < b.node.score; });
}

template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (int i = w; i < n; i += threads) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

std::vector<BeamNode> expand(const BeamNode& node, const Instance& inst, const BeamConfig& cfg,
                             std::uint64_t seed, SolutionPool* pool) {
  validate(cfg);
  auto scored = expand_scored(node, inst, cfg, seed, std::nullopt);
  if (pool)
    for (const auto& c : scored)
      for (const auto& comp : c.completions) pool->offer(comp.solution, comp.cost);
  sort_by_score(scored);
  std::vector<BeamNode> children;
  children.reserve(scored.size());
  for (auto& c : scored) children.push_back(std::move(c.node));
  return children;
}

BeamResult run_beam_search(const Instance& inst, const BeamConfig& cfg, const Deadline* deadline) {
  validate(cfg);
  BeamResult result;
  SolutionPool pool(static_cast<std::size_t>(cfg.beam_width));

  BeamNode root = make_root(inst);
  {
    auto score = score_from(*root.state, {}, cfg.greedy, node_seed(cfg.seed, 0, 0));
    root.score = score.score;
    for (const auto& c : score.completions) pool.offer(c.solution, c.cost);
    BeamLevelStats st;
    st.level = 0;
    st.nodes = 1;
    st.completions = static_cast<int>(score.completions.size());
    st.best_score = root.score;
    st.pool_best = pool.best_cost();
    result.levels.push_back(st);
    result.dump.push_back({0, 0, root.score, pool.best_cost()});
  }

  std::vector<BeamNode> beam{std::move(root)};
  int level = 0;
  while (!beam.empty()) {
    if (deadline && deadline->expired()) {
      result.completed = false;
      break;
    }
    ++level;
    const std::optional<Money> keep_below =
        pool.size() == static_cast<std::size_t>(cfg.beam_width) ? std::optional<Money>(pool.entries().back().cost)
                                                                : std::nullopt;
    std::vector<std::vector<ScoredChild>> per_parent(beam.size());
    parallel_for(static_cast<int>(beam.size()), cfg.threads, [&](int i) {
      per_parent[static_cast<std::size_t>(i)] =
          expand_scored(beam[static_cast<std::size_t>(i)], inst, cfg, node_seed(cfg.seed, level, i), keep_below);
    });

    BeamLevelStats st;
    st.level = level;
    st.expansions = static_cast<int>(beam.size());
    std::vector<BeamNode> candidates;
    for (auto& kids : per_parent) {
      for (auto& kid : kids) {
        st.completions += kid.completions_run;
        for (const auto& comp : kid.completions) pool.offer(comp.solution, comp.cost);
        candidates.push_back(std::move(kid.node));
      }
    }
    st.children = static_cast<int>(candidates.size());
    if (candidates.empty()) break;

    // Candidates are in creation order (parent, priority rank). Stable sort:
    // among equal scores the first-created survives the filter.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const BeamNode& a, const BeamNode& b) { return a.score < b.score; });
    std::vector<BeamNode> next;
    std::unordered_set<std::int64_t> seen;
    for (auto& c : candidates) {
      if (!seen.insert(c.score.cents()).second) {
        ++st.duplicates;
        continue;
      }
      if (next.size() < static_cast<std::size_t>(cfg.beam_width)) next.push_back(std::move(c));
    }
    st.nodes = static_cast<int>(next.size());
    st.best_score = next.front().score;
    st.pool_best = pool.best_cost();
    for (std::size_t i = 0; i < next.size(); ++i)
      result.dump.push_back({level, static_cast<int>(i), next[i].score, pool.best_cost()});
    result.levels.push_back(st);
    beam = std::move(next);
  }

  result.best = pool.best();
  result.best_cost = pool.best_cost();
  for (const auto& e : pool.entries()) {
    result.pool.push_back(e.solution);
    result.pool_costs.push_back(e.cost);
  }
  return result;
}

}  // namespace mirp
