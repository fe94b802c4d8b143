#include "mirp/greedy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mirp {

void validate(const GreedyConfig& cfg) {
  if (cfg.q < 1) throw std::invalid_argument("greedy: q must be at least 1");
  if (!(cfg.sigma_frac >= 0.0)) throw std::invalid_argument("greedy: sigma_frac must be nonnegative");
}

namespace {

struct Keyed {
  double key;
  int id;
  Call call;
};

bool by_key(const Keyed& a, const Keyed& b) {
  if (a.key != b.key) return a.key < b.key;
  return a.id < b.id;
}

void perturb(std::vector<Keyed>& items, SelectionNoise* noise, bool enabled) {
  if (!noise || !enabled || !noise->rng || items.size() < 2) return;
  auto [lo, hi] = std::minmax_element(items.begin(), items.end(), by_key);
  const double sd = noise->sigma_frac * (hi->key - lo->key);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& it : items) it.key += sd * normal(*noise->rng);
}

// Best way for vessel `v` to reach a berth at `port`, directly or through an
// enabling visit. Returns the call to append now and the berth start at `port`.
std::optional<std::pair<Call, int>> serve(const Simulator& sim, int port, int v) {
  const auto& inst = sim.instance();
  if (sim.vessel_done(v)) return std::nullopt;
  if (sim.next_kind(v) == inst.kind(port)) {
    auto slot = sim.probe({port, v});
    if (!slot) return std::nullopt;
    return std::pair{Call{port, v}, slot->berth_start};
  }
  std::optional<std::pair<Call, int>> best;
  for (int via = 0; via < inst.num_ports(); ++via) {
    if (inst.kind(via) == inst.kind(port)) continue;
    auto first = sim.probe({via, v});
    if (!first) continue;
    const int arrival = first->berth_end + inst.travel(v, via, port);
    auto start = sim.earliest_start(port, arrival, inst.capacity(v));
    if (!start) continue;
    if (!best || *start < best->second) best = std::pair{Call{via, v}, *start};
  }
  return best;
}

}  // namespace

std::vector<Call> prioritized_calls(const Simulator& sim, std::size_t limit, SelectionNoise* noise) {
  const auto& inst = sim.instance();
  std::vector<Call> out;
  if (limit == 0) return out;

  std::vector<Keyed> ports;
  for (int j = 0; j < inst.num_ports(); ++j) {
    const int vt = sim.violation_time(j);
    if (vt <= inst.horizon) ports.push_back({static_cast<double>(vt), j, {}});
  }
  perturb(ports, noise, noise && noise->port);
  std::sort(ports.begin(), ports.end(), by_key);

  for (const auto& pk : ports) {
    std::vector<Keyed> options;
    for (int v = 0; v < inst.num_vessels(); ++v) {
      if (auto s = serve(sim, pk.id, v)) options.push_back({static_cast<double>(s->second), v, s->first});
    }
    perturb(options, noise, noise && noise->vessel);
    std::sort(options.begin(), options.end(), by_key);
    for (const auto& o : options) {
      if (std::find(out.begin(), out.end(), o.call) != out.end()) continue;
      out.push_back(o.call);
      if (out.size() >= limit) return out;
    }
  }
  return out;
}

Completion complete_from(const Simulator& state, std::span<const Call> prefix, SelectionNoise* noise) {
  const auto& inst = state.instance();
  Simulator sim = state;
  std::vector<Call> calls(prefix.begin(), prefix.end());
  // Every appended call ends at least op_duration after the vessel's previous
  // berth_end, so each vessel gets at most T/op_duration more calls.
  const std::size_t cap =
      calls.size() + static_cast<std::size_t>(inst.num_vessels()) *
                         static_cast<std::size_t>(inst.horizon / inst.op_duration + 1);
  while (calls.size() < cap) {
    auto next = prioritized_calls(sim, 1, noise);
    if (next.empty()) break;
    sim.push(next.front());
    calls.push_back(next.front());
  }
  Completion c{Solution::from_calls(std::move(calls), inst), {}};
  auto cache = std::make_shared<EvalCache>();
  cache->instance = &inst;
  cache->result = sim.finish();
  c.cost = cache->result.total_cost;
  c.solution.set_cache(std::move(cache));
  return c;
}

namespace {

Simulator simulate(const Solution& partial, const Instance& inst) {
  Simulator sim(inst);
  for (const auto& c : partial.calls()) sim.push(c);
  return sim;
}

}  // namespace

Solution complete_deterministic(const Solution& partial, const Instance& inst) {
  return complete_from(simulate(partial, inst), partial.calls()).solution;
}

Solution complete_randomized(const Solution& partial, const Instance& inst, const GreedyConfig& cfg,
                             std::uint64_t seed) {
  validate(cfg);
  Rng rng(seed);
  SelectionNoise noise{&rng, cfg.sigma_frac, cfg.randomize_port, cfg.randomize_vessel};
  return complete_from(simulate(partial, inst), partial.calls(), &noise).solution;
}

Money lower_median(std::vector<Money> values) {
  if (values.empty()) throw std::invalid_argument("lower_median: empty input");
  const auto mid = values.begin() + static_cast<long>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

PartialScore score_from(const Simulator& state, std::span<const Call> prefix, const GreedyConfig& cfg,
                        std::uint64_t seed) {
  validate(cfg);
  PartialScore out;
  out.completions.reserve(static_cast<std::size_t>(cfg.q));
  out.completions.push_back(complete_from(state, prefix));
  for (int k = 1; k < cfg.q; ++k) {
    Rng rng(seed + static_cast<std::uint64_t>(k));
    SelectionNoise noise{&rng, cfg.sigma_frac, cfg.randomize_port, cfg.randomize_vessel};
    out.completions.push_back(complete_from(state, prefix, &noise));
  }
  std::vector<Money> costs;
  costs.reserve(out.completions.size());
  for (std::size_t i = 0; i < out.completions.size(); ++i) {
    costs.push_back(out.completions[i].cost);
    if (out.completions[i].cost < out.completions[out.best_index].cost) out.best_index = i;
  }
  out.score = lower_median(std::move(costs));
  return out;
}

PartialScore score_partial(const Solution& partial, const Instance& inst, const GreedyConfig& cfg,
                           std::uint64_t seed) {
  return score_from(simulate(partial, inst), partial.calls(), cfg, seed);
}

}  // namespace mirp
