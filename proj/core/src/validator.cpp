#include "mirp/validator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace mirp {

namespace {

constexpr double kTol = 1e-6;

using ArcKey = std::tuple<Node, Node, ArcKind, bool>;

class FlowBuilder {
 public:
  explicit FlowBuilder(std::size_t classes) : arcs_(classes) {}

  void add(int cls, ArcKind kind, Node from, Node to, bool operates) {
    arcs_[static_cast<std::size_t>(cls)][ArcKey{from, to, kind, operates}] += 1;
  }

  void wait(int cls, int port, int from, int to) {
    for (int t = from; t < to; ++t) add(cls, ArcKind::Waiting, {port, t}, {port, t + 1}, false);
  }

  std::vector<std::vector<Arc>> take() const {
    std::vector<std::vector<Arc>> out(arcs_.size());
    for (std::size_t c = 0; c < arcs_.size(); ++c)
      for (const auto& [key, flow] : arcs_[c]) {
        const auto& [from, to, kind, operates] = key;
        out[c].push_back(Arc{kind, from, to, operates, flow});
      }
    return out;
  }

 private:
  std::vector<std::map<ArcKey, int>> arcs_;
};

std::string node_str(const Node& n) {
  if (n.port == Node::kSource) return "source";
  if (n.port == Node::kSink) return "sink";
  return "(" + std::to_string(n.port) + "," + std::to_string(n.t) + ")";
}

bool in_grid(const Node& n, const Instance& inst) {
  return n.port >= 0 && n.port < inst.num_ports() && n.t >= 0 && n.t <= inst.horizon;
}

Money arc_cost(const Arc& a, int cls, const Instance& inst) {
  Money unit;
  if (a.kind == ArcKind::InterRegional || a.kind == ArcKind::Ballast) {
    const auto& vc = inst.classes[static_cast<std::size_t>(cls)];
    const double factor = a.kind == ArcKind::Ballast ? 1.0 - vc.ballast_discount : 1.0;
    unit += Money::from_double(vc.cost_per_km * inst.distance_km[a.from.port][a.to.port] * factor);
  }
  if (a.operates) unit += Money::from_double(inst.ports[a.from.port].port_fee);
  return Money::from_cents(unit.cents() * a.flow);
}

}  // namespace

ArcFlow schedule_to_arcflow(const Solution& s, const EvalResult& eval, const Instance& inst) {
  if (eval.schedule.size() != s.size())
    throw ArcFlowError("evaluation covers " + std::to_string(eval.schedule.size()) + " calls, solution has " +
                       std::to_string(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (eval.schedule[i].call != s[i])
      throw ArcFlowError("evaluation does not match the solution at position " + std::to_string(i));

  const int T = inst.horizon;
  FlowBuilder fb(inst.classes.size());
  for (int v = 0; v < inst.num_vessels(); ++v) {
    const auto& vs = inst.vessels[static_cast<std::size_t>(v)];
    const int cls = vs.class_id;
    Node cur{vs.start_port, std::min(vs.ready_time, T)};
    fb.add(cls, ArcKind::Source, {Node::kSource, 0}, cur, false);
    bool loaded = vs.initial_state == LoadState::Loaded;
    bool after_operation = false;
    bool any = false;

    for (const auto& cs : eval.schedule) {
      if (cs.call.vessel != v || cs.truncated) continue;
      any = true;
      if (cs.call.port != cur.port) {
        const Node arrive{cs.call.port, cur.t + inst.travel(v, cur.port, cs.call.port)};
        fb.add(cls, loaded ? ArcKind::InterRegional : ArcKind::Ballast, cur, arrive, after_operation);
        cur = arrive;
      }
      if (cs.berth_end < cur.t)
        throw ArcFlowError("vessel " + std::to_string(v) + " operates at port " + std::to_string(cs.call.port) +
                           " before it arrives");
      fb.wait(cls, cur.port, cur.t, cs.berth_end);
      cur.t = cs.berth_end;
      after_operation = true;
      loaded = !loaded;
    }
    if (!any) {
      fb.wait(cls, cur.port, cur.t, T);
      cur.t = T;
    }
    fb.add(cls, ArcKind::Sink, cur, {Node::kSink, 0}, after_operation);
  }
  return ArcFlow{fb.take(), eval.spot_charter};
}

ValidatorReport check_arcflow(const ArcFlow& flow, const EvalResult& eval, const Instance& inst) {
  ValidatorReport rep;
  const int T = inst.horizon;
  const int P = inst.num_ports();
  const int d = inst.op_duration;

  std::vector<std::vector<double>> transfer(static_cast<std::size_t>(P), std::vector<double>(T + 1, 0.0));
  std::vector<std::vector<int>> busy(static_cast<std::size_t>(P), std::vector<int>(T + 1, 0));
  Money routing;
  int last_end = -1;

  if (flow.arcs.size() != inst.classes.size()) rep.domain.push_back("arc flow does not cover every vessel class");

  for (std::size_t c = 0; c < flow.arcs.size() && c < inst.classes.size(); ++c) {
    const int cls = static_cast<int>(c);
    int fleet = 0;
    int sample_vessel = -1;
    for (int v = 0; v < inst.num_vessels(); ++v)
      if (inst.vessels[static_cast<std::size_t>(v)].class_id == cls) {
        ++fleet;
        if (sample_vessel < 0) sample_vessel = v;
      }

    std::map<Node, int> balance;
    balance[{Node::kSource, 0}] = fleet;
    balance[{Node::kSink, 0}] = -fleet;
    for (const auto& a : flow.arcs[c]) {
      const std::string where = "class " + std::to_string(cls) + " arc " + node_str(a.from) + "->" + node_str(a.to);
      if (a.flow < 0) rep.domain.push_back(where + ": negative flow");
      if (a.kind == ArcKind::InterRegional && a.flow > 1)
        rep.domain.push_back(where + ": inter-regional flow " + std::to_string(a.flow) + " exceeds 1");

      const bool from_ok = a.kind == ArcKind::Source ? a.from.port == Node::kSource : in_grid(a.from, inst);
      const bool to_ok = a.kind == ArcKind::Sink ? a.to.port == Node::kSink : in_grid(a.to, inst);
      if (!from_ok || !to_ok) {
        rep.domain.push_back(where + ": endpoint outside the network");
        continue;
      }
      switch (a.kind) {
        case ArcKind::Waiting:
          if (a.from.port != a.to.port || a.to.t != a.from.t + 1)
            rep.domain.push_back(where + ": waiting arc must span one period at one port");
          break;
        case ArcKind::InterRegional:
        case ArcKind::Ballast:
          if (sample_vessel >= 0 && a.to.t - a.from.t != inst.travel(sample_vessel, a.from.port, a.to.port))
            rep.domain.push_back(where + ": duration differs from the travel time");
          break;
        default: break;
      }
      balance[a.from] -= a.flow;
      balance[a.to] += a.flow;

      if (a.operates) {
        const int j = a.from.port;
        const int e = a.from.t;
        if (j < 0) continue;
        const double qty = inst.classes[c].capacity * a.flow;
        transfer[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] +=
            inst.kind(j) == PortKind::Production ? -qty : qty;
        if (e - d < 0) rep.domain.push_back(where + ": operation starts before the horizon");
        for (int t = std::max(1, e - d + 1); t <= e; ++t) busy[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] += a.flow;
        if (a.flow > 0) last_end = std::max(last_end, e);
      }
      routing += arc_cost(a, cls, inst);
    }
    for (const auto& [node, r] : balance)
      if (r != 0) rep.flow_balance.push_back({cls, node, r});
  }

  for (int j = 0; j < P; ++j) {
    const auto& p = inst.ports[static_cast<std::size_t>(j)];
    const auto ju = static_cast<std::size_t>(j);
    for (int t = 1; t <= T; ++t) {
      const int excess = busy[ju][static_cast<std::size_t>(t)] - p.berth_limit;
      if (excess > 0) rep.berth.push_back({j, t, excess});
    }
  }

  // Inventories recomputed from the flows. Spot charter moves stock in the
  // direction the model allows: sold off at producers, bought in at consumers.
  Money penalty;
  const bool have_alpha = flow.spot_charter.size() == static_cast<std::size_t>(P);
  const bool have_levels = eval.inventory.size() == static_cast<std::size_t>(P);
  if (!have_alpha) rep.domain.push_back("spot charter does not cover every port");
  for (int j = 0; j < P && have_alpha; ++j) {
    const auto& p = inst.ports[static_cast<std::size_t>(j)];
    const auto ju = static_cast<std::size_t>(j);
    if (flow.spot_charter[ju].size() != static_cast<std::size_t>(T + 1)) {
      rep.domain.push_back("spot charter of port " + std::to_string(j) + " does not cover the horizon");
      continue;
    }
    double level = p.inv_init;
    for (int t = 1; t <= T; ++t) {
      const auto tu = static_cast<std::size_t>(t);
      const double alpha = flow.spot_charter[ju][tu];
      if (alpha < 0.0) rep.domain.push_back("negative spot charter at (" + std::to_string(j) + "," + std::to_string(t) + ")");
      level += p.sign() * p.rate[tu - 1] + transfer[ju][tu] - p.sign() * alpha;
      const double reported = have_levels && eval.inventory[ju].size() > tu ? eval.inventory[ju][tu] : level;
      const double balance = reported - level;
      const double bound = std::max({0.0, p.inv_min[tu - 1] - level, level - p.inv_max[tu - 1]});
      if (std::abs(balance) > kTol || bound > kTol) rep.inventory.push_back({j, t, balance, bound});
      if (alpha > 0.0) penalty += Money::from_double(p.penalty[tu - 1] * alpha);
    }
  }

  const int L = last_end < 0 ? T : last_end;
  const Money reward = Money::from_double(inst.early_finish_reward * std::max(0, T - L));
  rep.objective = -(routing + penalty - reward);
  rep.evaluator_total = eval.total_cost;
  rep.difference = std::abs((rep.objective + eval.total_cost).value());
  rep.matches_evaluator = rep.difference <= 0.01 + 1e-9;
  return rep;
}

ValidatorReport check(const Solution& s, const Instance& inst) {
  const EvalResult eval = evaluate_full(s, inst);
  return check_arcflow(schedule_to_arcflow(s, eval, inst), eval, inst);
}

std::string describe(const ValidatorReport& r) {
  std::ostringstream out;
  for (const auto& f : r.flow_balance)
    out << "flow balance: class " << f.vessel_class << " node " << node_str(f.node) << " residual " << f.residual
        << '\n';
  for (const auto& i : r.inventory)
    out << "inventory: port " << i.port << " t " << i.t << " balance " << i.balance << " bound " << i.bound << '\n';
  for (const auto& b : r.berth) out << "berth: port " << b.port << " t " << b.t << " excess " << b.excess << '\n';
  for (const auto& d : r.domain) out << "domain: " << d << '\n';
  out << "objective " << r.objective.str() << ", evaluator total " << r.evaluator_total.str() << ", difference "
      << r.difference << (r.matches_evaluator ? " (match)" : " (MISMATCH)") << '\n';
  out << (r.clean() && r.matches_evaluator ? "clean" : "violations found") << '\n';
  return out.str();
}

namespace {

class BruteForce {
 public:
  BruteForce(const Instance& inst, std::optional<int> max_calls, long long limit)
      : inst_(inst), max_calls_(max_calls), limit_(limit) {}

  BruteForceResult run() {
    Simulator root(inst_);
    best_cost_ = root.finish().total_cost;
    dfs(root);
    BruteForceResult r;
    r.solution = Solution::from_calls(best_, inst_);
    r.cost = best_cost_;
    r.nodes = nodes_;
    return r;
  }

 private:
  void dfs(const Simulator& sim) {
    if (++nodes_ > limit_)
      throw SearchSpaceError("brute force: more than " + std::to_string(limit_) + " sequences; instance too large");
    if (!path_.empty()) {
      const Money cost = sim.finish().total_cost;
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_ = path_;
      }
    }
    if (max_calls_ && static_cast<int>(path_.size()) >= *max_calls_) return;
    for (int j = 0; j < inst_.num_ports(); ++j) {
      for (int v = 0; v < inst_.num_vessels(); ++v) {
        if (sim.vessel_done(v) || sim.next_kind(v) != inst_.kind(j)) continue;
        const Call c{j, v};
        if (!path_.empty() && independent(path_.back(), c) && c < path_.back()) continue;
        if (!sim.probe(c)) continue;
        Simulator next = sim;
        next.push(c);
        path_.push_back(c);
        dfs(next);
        path_.pop_back();
      }
    }
  }

  const Instance& inst_;
  std::optional<int> max_calls_;
  long long limit_;
  long long nodes_ = 0;
  std::vector<Call> path_;
  std::vector<Call> best_;
  Money best_cost_;
};

}  // namespace

BruteForceResult brute_force_optimum(const Instance& inst, std::optional<int> max_calls, long long node_limit) {
  if (max_calls && *max_calls < 0) throw std::invalid_argument("brute force: max_calls must be nonnegative");
  return BruteForce(inst, max_calls, node_limit).run();
}

}  // namespace mirp
