#include "mirp/ils.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mirp/evaluator.hpp"

namespace mirp {

void validate(const IlsConfig& cfg) {
  if (cfg.iterations < 1) throw std::invalid_argument("ils: iterations must be at least 1");
  if (cfg.non_improving_limit < 1) throw std::invalid_argument("ils: non_improving_limit must be at least 1");
  if (cfg.perturbations < 0) throw std::invalid_argument("ils: perturbations must be nonnegative");
  if (!(cfg.sa_p_final > 0.0 && cfg.sa_p_final <= cfg.sa_p_initial && cfg.sa_p_initial < 1.0))
    throw std::invalid_argument("ils: need 0 < sa_p_final <= sa_p_initial < 1");
  if (!(cfg.delta_ref_frac >= 0.0)) throw std::invalid_argument("ils: delta_ref_frac must be nonnegative");
}

double acceptance_probability(const IlsConfig& cfg, int iter) {
  if (cfg.iterations <= 1) return cfg.sa_p_initial;
  const double frac = std::clamp(static_cast<double>(iter - 1) / static_cast<double>(cfg.iterations - 1), 0.0, 1.0);
  return (1.0 - frac) * cfg.sa_p_initial + frac * cfg.sa_p_final;  // exact at both ends
}

double temperature(const IlsConfig& cfg, int iter, double delta_ref) {
  if (delta_ref <= 0.0) return 0.0;
  return -delta_ref / std::log(acceptance_probability(cfg, iter));
}

PerturbOutcome perturb(const Solution& s, const Instance& inst, const IlsConfig& cfg, Rng& rng) {
  PerturbOutcome out{s, {}};
  for (int k = 0; k < cfg.perturbations; ++k) {
    std::vector<Neighborhood> open(kNeighborhoods.begin(), kNeighborhoods.end());
    bool applied = false;
    while (!open.empty() && !applied) {
      const auto pick = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
      const Neighborhood nb = open[pick];
      std::vector<std::pair<Move, Solution>> options;
      for (const auto& m : enumerate_moves(out.solution, nb, inst)) {
        if (is_redundant(out.solution, m)) continue;
        if (auto next = try_apply(out.solution, m, inst)) options.emplace_back(m, std::move(*next));
      }
      if (options.empty()) {
        open.erase(open.begin() + static_cast<long>(pick));
        continue;
      }
      auto& chosen = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      out.applied.push_back(chosen.first);
      out.solution = std::move(chosen.second);
      applied = true;
    }
    if (!applied) break;  // nothing applicable anywhere
  }
  return out;
}

IlsResult run_ils(const Solution& incumbent, const Instance& inst, const IlsConfig& cfg, const Deadline* deadline) {
  validate(cfg);
  Rng rng(cfg.seed);
  IlsResult res;
  Solution current = incumbent;
  Money current_cost = ensure_evaluated(current, inst).total_cost;
  res.best = current;
  res.best_cost = current_cost;
  int counter = 0;

  for (int iter = 1; iter <= cfg.iterations; ++iter) {
    if (deadline && deadline->expired()) {
      res.completed = false;
      break;
    }
    auto perturbed = perturb(current, inst, cfg, rng);
    RvndStats stats;
    Solution candidate = rvnd(std::move(perturbed.solution), inst, rng(), &stats);
    ++res.rvnd_calls;
    if (stats.start_cost < stats.end_cost) ++res.rvnd_increases;
    const Money cand_cost = ensure_evaluated(candidate, inst).total_cost;

    const double delta_ref = cfg.delta_ref_frac * std::abs(res.best_cost.value());
    const double temp = temperature(cfg, iter, delta_ref);
    const double delta = (cand_cost - current_cost).value();
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const bool accept = delta <= 0.0 || (temp > 0.0 && u < std::exp(-delta / temp));

    bool restored = false;
    if (accept) {
      current = std::move(candidate);
      current_cost = cand_cost;
      if (current_cost < res.best_cost) {
        res.best = current;
        res.best_cost = current_cost;
        counter = 0;
      } else if (++counter > cfg.non_improving_limit) {
        current = res.best;
        current_cost = res.best_cost;
        counter = 0;
        restored = true;
        ++res.restores;
      }
    }
    res.trace.push_back({iter, current_cost, res.best_cost, accept, temp, restored});
  }
  return res;
}

}  // namespace mirp
