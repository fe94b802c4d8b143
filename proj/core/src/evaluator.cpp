#include "mirp/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace mirp {

namespace {
constexpr double kEps = 1e-9;
}

Money leg_cost(const Instance& inst, int vessel, int from, int to, bool loaded) {
  if (from == to) return {};
  const auto& vc = inst.vessel_class(vessel);
  const double factor = loaded ? 1.0 : 1.0 - vc.ballast_discount;
  return Money::from_double(vc.cost_per_km * inst.distance_km[from][to] * factor);
}

Money port_fee(const Instance& inst, int port) { return Money::from_double(inst.ports[port].port_fee); }

Money spot_charter_cost(const Instance& inst, int port, int period, double amount) {
  if (amount <= 0.0) return {};
  return Money::from_double(inst.ports[port].penalty[period - 1] * amount);
}

Money early_finish_reward(const Instance& inst, int last_berth_end) {
  const int spare = std::max(0, inst.horizon - last_berth_end);
  return Money::from_double(inst.early_finish_reward * spare);
}

Simulator::Simulator(const Instance& inst) : inst_(&inst) {
  const int T = inst.horizon;
  vessels_.resize(inst.vessels.size());
  for (std::size_t v = 0; v < inst.vessels.size(); ++v) {
    const auto& vs = inst.vessels[v];
    vessels_[v].port = vs.start_port;
    vessels_[v].free_at = vs.ready_time;
    vessels_[v].loaded = vs.initial_state == LoadState::Loaded;
  }
  ports_.resize(inst.ports.size());
  for (std::size_t j = 0; j < inst.ports.size(); ++j) {
    auto& ps = ports_[j];
    ps.level.assign(T + 1, 0.0);
    ps.transfer.assign(T + 1, 0.0);
    ps.alpha.assign(T + 1, 0.0);
    ps.busy.assign(T + 1, 0);
    ps.level[0] = inst.ports[j].inv_init;
    settle(static_cast<int>(j), 1);
  }
}

void Simulator::settle(int port, int from) {
  const auto& p = inst_->ports[port];
  auto& ps = ports_[port];
  const double sign = p.sign();
  for (int t = from; t <= inst_->horizon; ++t) {
    const double raw = ps.level[t - 1] + sign * p.rate[t - 1] + ps.transfer[t];
    const double lo = p.inv_min[t - 1];
    const double hi = p.inv_max[t - 1];
    if (raw < lo) {
      ps.alpha[t] = lo - raw;
      ps.level[t] = lo;
    } else if (raw > hi) {
      ps.alpha[t] = raw - hi;
      ps.level[t] = hi;
    } else {
      ps.alpha[t] = 0.0;
      ps.level[t] = raw;
    }
  }
}

int Simulator::arrival_at(int v, int port) const {
  const auto& vs = vessels_[v];
  return vs.free_at + inst_->travel(v, vs.port, port);
}

std::optional<int> Simulator::earliest_start(int port, int arrival, double quantity) const {
  const auto& p = inst_->ports[port];
  const auto& ps = ports_[port];
  const int T = inst_->horizon;
  const int d = inst_->op_duration;
  const bool loading = p.kind == PortKind::Production;
  for (int t = std::max(arrival, ps.fifo_floor); t + d <= T; ++t) {
    bool berth_free = true;
    for (int q = t + 1; q <= t + d; ++q) {
      if (ps.busy[q] >= p.berth_limit) {
        berth_free = false;
        break;
      }
    }
    if (!berth_free) continue;
    const int e = t + d;
    const double raw = ps.level[e - 1] + p.sign() * p.rate[e - 1] + ps.transfer[e];
    if (loading) {
      if (raw - quantity < p.inv_min[e - 1] - kEps) continue;
    } else {
      if (raw + quantity > p.inv_max[e - 1] + kEps) continue;
    }
    return t;
  }
  return std::nullopt;
}

std::optional<Simulator::Slot> Simulator::probe(Call c) const {
  const auto& vs = vessels_[c.vessel];
  if (vs.done) return std::nullopt;
  const int arrival = arrival_at(c.vessel, c.port);
  auto start = earliest_start(c.port, arrival, inst_->capacity(c.vessel));
  if (!start) return std::nullopt;
  return Slot{arrival, *start, *start + inst_->op_duration};
}

const CallSchedule& Simulator::push(Call c) {
  auto& vs = vessels_[c.vessel];
  const PortKind kind = inst_->kind(c.port);
  if ((kind == PortKind::Consumption) != vs.loaded)
    throw ParityError("simulator: vessel " + std::to_string(c.vessel) + " cannot " +
                      (vs.loaded ? "load" : "discharge") + " at port " + std::to_string(c.port));

  CallSchedule cs;
  cs.call = c;
  std::optional<Slot> slot = probe(c);
  if (!slot) {
    cs.truncated = true;
    if (!vs.done) cs.arrival = arrival_at(c.vessel, c.port);
    vs.done = true;
    ++truncated_;
    // Keep the chain's parity moving so later calls of the vessel are
    // checked against the kind they would have needed.
    vs.loaded = !vs.loaded;
    schedule_.push_back(cs);
    return schedule_.back();
  }

  cs.arrival = slot->arrival;
  cs.berth_start = slot->berth_start;
  cs.berth_end = slot->berth_end;

  auto& ps = ports_[c.port];
  for (int q = cs.berth_start + 1; q <= cs.berth_end; ++q) ++ps.busy[q];
  ps.fifo_floor = cs.berth_start;
  ps.last_end = std::max(ps.last_end, cs.berth_end);
  const double qty = inst_->capacity(c.vessel);
  ps.transfer[cs.berth_end] += kind == PortKind::Production ? -qty : qty;
  settle(c.port, cs.berth_end);

  routing_ += leg_cost(*inst_, c.vessel, vs.port, c.port, vs.loaded);
  routing_ += port_fee(*inst_, c.port);

  vs.port = c.port;
  vs.free_at = cs.berth_end;
  vs.loaded = !vs.loaded;
  vs.started = true;
  last_end_ = std::max(last_end_, cs.berth_end);

  schedule_.push_back(cs);
  return schedule_.back();
}

int Simulator::violation_time(int port) const {
  const auto& ps = ports_[port];
  const int T = inst_->horizon;
  for (int t = std::max(1, ps.last_end); t <= T; ++t)
    if (ps.alpha[t] > 0.0) return t;
  return T + 1;
}

EvalResult Simulator::finish() const {
  EvalResult r;
  r.schedule = schedule_;
  r.inventory.reserve(ports_.size());
  r.spot_charter.reserve(ports_.size());
  Money penalty;
  for (std::size_t j = 0; j < ports_.size(); ++j) {
    r.inventory.push_back(ports_[j].level);
    r.spot_charter.push_back(ports_[j].alpha);
    for (int t = 1; t <= inst_->horizon; ++t)
      penalty += spot_charter_cost(*inst_, static_cast<int>(j), t, ports_[j].alpha[t]);
  }
  r.routing_cost = routing_;
  r.penalty_cost = penalty;
  r.last_berth_end = last_end_ < 0 ? inst_->horizon : last_end_;
  r.reward_credit = early_finish_reward(*inst_, r.last_berth_end);
  r.total_cost = r.routing_cost + r.penalty_cost - r.reward_credit;
  r.truncated_count = truncated_;
  return r;
}

std::shared_ptr<const EvalCache> simulate_with_checkpoints(
    const Instance& inst, Simulator sim, std::size_t start_index, std::span<const Call> calls,
    std::vector<std::shared_ptr<const Simulator>> checkpoints) {
  constexpr auto stride = EvalCache::kCheckpointStride;
  for (std::size_t i = start_index; i < calls.size(); ++i) {
    if (i % stride == 0 && checkpoints.size() == i / stride)
      checkpoints.push_back(std::make_shared<const Simulator>(sim));
    sim.push(calls[i]);
  }
  auto cache = std::make_shared<EvalCache>();
  cache->instance = &inst;
  cache->result = sim.finish();
  cache->checkpoints = std::move(checkpoints);
  return cache;
}

EvalResult evaluate_full(const Solution& s, const Instance& inst) {
  Simulator sim(inst);
  for (const auto& c : s.calls()) sim.push(c);
  return sim.finish();
}

namespace {

struct Resume {
  Simulator sim;
  std::size_t index;
  std::vector<std::shared_ptr<const Simulator>> checkpoints;
};

std::optional<Resume> resume_point(const Solution& s, const Instance& inst, std::size_t change_point) {
  const auto& cache = s.cache();
  if (!cache || cache->instance != &inst || cache->checkpoints.empty()) return std::nullopt;
  const std::size_t usable = std::min(change_point, s.valid_prefix());
  std::size_t k = std::min(usable / EvalCache::kCheckpointStride, cache->checkpoints.size() - 1);
  std::vector<std::shared_ptr<const Simulator>> kept(cache->checkpoints.begin(),
                                                     cache->checkpoints.begin() + static_cast<long>(k) + 1);
  return Resume{*cache->checkpoints[k], k * EvalCache::kCheckpointStride, std::move(kept)};
}

}  // namespace

IncrementalOutcome evaluate_incremental(const Solution& s, const Instance& inst, std::size_t change_point) {
  auto resume = resume_point(s, inst, change_point);
  if (!resume) return {evaluate_full(s, inst), true, 0};
  Simulator sim = std::move(resume->sim);
  for (std::size_t i = resume->index; i < s.size(); ++i) sim.push(s[i]);
  return {sim.finish(), false, resume->index};
}

const EvalResult& ensure_evaluated(Solution& s, const Instance& inst) {
  const auto& cache = s.cache();
  if (cache && cache->instance == &inst && s.valid_prefix() == s.size() &&
      cache->result.schedule.size() == s.size())
    return cache->result;
  auto resume = resume_point(s, inst, s.size());
  std::shared_ptr<const EvalCache> fresh;
  if (resume)
    fresh = simulate_with_checkpoints(inst, std::move(resume->sim), resume->index, s.calls(),
                                      std::move(resume->checkpoints));
  else
    fresh = simulate_with_checkpoints(inst, Simulator(inst), 0, s.calls(), {});
  s.set_cache(std::move(fresh));
  return s.cache()->result;
}

std::vector<bool> Solution::truncation_mask() const {
  if (!cache_ || valid_prefix_ != calls_.size() || cache_->result.schedule.size() != calls_.size()) return {};
  std::vector<bool> mask;
  mask.reserve(calls_.size());
  for (const auto& cs : cache_->result.schedule) mask.push_back(cs.truncated);
  return mask;
}

double gap_percent(Money cost, Money best_known) {
  if (best_known.cents() <= 0) throw std::invalid_argument("gap_percent: best-known objective must be positive");
  return 100.0 * static_cast<double>(cost.cents() - best_known.cents()) /
         static_cast<double>(best_known.cents());
}

std::string format_percent(double pct) {
  const long long hundredths = std::llround(pct * 100.0);
  return Money::from_cents(hundredths).str();
}

void write_trace(std::ostream& out, const EvalResult& r) {
  out << "t,port,inventory,alpha\n";
  for (std::size_t j = 0; j < r.inventory.size(); ++j)
    for (std::size_t t = 0; t < r.inventory[j].size(); ++t)
      out << t << ',' << j << ',' << r.inventory[j][t] << ',' << r.spot_charter[j][t] << '\n';
  out << "call_idx,vessel,port,arrival,start,end\n";
  for (std::size_t i = 0; i < r.schedule.size(); ++i) {
    const auto& cs = r.schedule[i];
    out << i << ',' << cs.call.vessel << ',' << cs.call.port << ',' << cs.arrival << ',' << cs.berth_start << ','
        << cs.berth_end << '\n';
  }
}

}  // namespace mirp
