// mirp: solve, sweep, validate and generate maritime inventory routing instances.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include "mirp/evaluator.hpp"
#include "mirp/harness.hpp"
#include "mirp/instance.hpp"
#include "mirp/validator.hpp"

namespace fs = std::filesystem;
using namespace mirp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitViolations = 3;

struct SearchOptions {
  std::optional<int> horizon;
  std::string stage = "ils";
  int beam_width = 100;
  int max_children = 2;
  int greedy_samples = 3;
  double sigma_frac = 0.25;
  std::uint64_t seed = 1;
  int seeds = 0;
  std::optional<double> time_limit = 90000.0;
  int ils_iterations = 640;
  int jobs = 1;
  int threads = 1;
  bool deterministic = false;
};

void add_search_options(CLI::App* cmd, SearchOptions& o) {
  cmd->add_option("--horizon", o.horizon, "Restrict the instance to its first T periods");
  cmd->add_option("--stage", o.stage, "Last stage: bs, ls or ils")->check(CLI::IsMember({"bs", "ls", "ils"}));
  cmd->add_option("--beam-width,-N", o.beam_width, "Beam width N");
  cmd->add_option("--max-children,-w", o.max_children, "Children per beam node w");
  cmd->add_option("--greedy-samples,-q", o.greedy_samples, "Greedy completions per score q");
  cmd->add_option("--sigma-frac", o.sigma_frac, "Randomized greedy noise");
  auto* seed = cmd->add_option("--seed", o.seed, "Single seed");
  auto* seeds = cmd->add_option("--seeds", o.seeds, "Run seeds 1..K (default 10)");
  seed->excludes(seeds);
  cmd->add_option("--time-limit", o.time_limit, "Per-seed wall-clock limit in seconds");
  cmd->add_option("--ils-iterations", o.ils_iterations, "ILS iterations");
  cmd->add_option("--jobs,-j", o.jobs, "Seeds run concurrently");
  cmd->add_option("--threads", o.threads, "Beam expansion threads per seed");
  cmd->add_flag("--deterministic", o.deterministic, "Write zero times in reports");
}

RunConfig make_config(const SearchOptions& o, bool single_seed) {
  RunConfig cfg;
  cfg.beam.beam_width = o.beam_width;
  cfg.beam.max_children = o.max_children;
  cfg.beam.greedy.q = o.greedy_samples;
  cfg.beam.greedy.sigma_frac = o.sigma_frac;
  cfg.beam.threads = o.threads;
  cfg.ils.iterations = o.ils_iterations;
  cfg.stage = *parse_stage(o.stage);
  cfg.time_limit_seconds = o.time_limit;
  cfg.jobs = o.jobs;
  if (single_seed) {
    cfg.seeds = {o.seed};
  } else if (o.seeds > 0) {
    cfg.seeds.resize(static_cast<std::size_t>(o.seeds));
    std::iota(cfg.seeds.begin(), cfg.seeds.end(), 1);
  }
  return cfg;
}

Instance load(const std::string& path, std::optional<int> horizon) {
  Instance inst = load_instance(path);
  if (horizon) inst = inst.with_horizon(*horizon);
  if (inst.name.empty()) inst.name = fs::path(path).stem().string();
  return inst;
}

std::optional<Money> parse_money_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto m = Money::parse(s);
  if (!m) throw ConfigError("not an amount: " + s);
  return m;
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

void write_beam_dump(const fs::path& p, const std::vector<BeamDumpRow>& rows) {
  auto out = open_out(p);
  out << "level,node,score,pool_best\n";
  for (const auto& r : rows) out << r.level << ',' << r.node << ',' << r.score.str() << ',' << r.pool_best.str() << '\n';
}

void write_ils_dump(const fs::path& p, const std::vector<IlsTraceRow>& rows) {
  auto out = open_out(p);
  out << "iter,current_cost,best_cost,accepted,temperature\n";
  for (const auto& r : rows)
    out << r.iter << ',' << r.current_cost.str() << ',' << r.best_cost.str() << ',' << (r.accepted ? 1 : 0) << ','
        << r.temperature << '\n';
}

// Per-seed dumps get the seed appended to the stem when several seeds ran.
fs::path seeded(const fs::path& p, std::uint64_t seed, bool many) {
  if (!many) return p;
  return p.parent_path() / (p.stem().string() + "-" + std::to_string(seed) + p.extension().string());
}

void write_reports(const fs::path& dir, const std::vector<RunRecord>& records, const ReportOptions& opt) {
  fs::create_directories(dir);
  auto main = open_out(dir / "main.csv");
  write_main_report(main, records, opt);
  auto stages = open_out(dir / "stages.csv");
  write_stage_report(stages, records, opt);
  auto plot = open_out(dir / "plot.csv");
  write_plot_report(plot, records, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam search and iterated local search for maritime inventory routing"};
  app.require_subcommand(1);

  // solve
  SearchOptions solve_opts;
  std::string solve_instance, solve_best_known, solve_out = "out", dump_beam, dump_ils;
  bool trace = false;
  auto* solve = app.add_subcommand("solve", "Run the staged pipeline on one instance");
  solve->add_option("--instance,-i", solve_instance, "Instance file")->required();
  solve->add_option("--best-known", solve_best_known, "Best-known objective for gaps");
  solve->add_option("--out,-o", solve_out, "Output directory");
  solve->add_option("--dump-beam", dump_beam, "Per-level beam CSV");
  solve->add_option("--dump-ils", dump_ils, "Per-iteration ILS CSV");
  solve->add_flag("--trace", trace, "Write the schedule trace of the best solution");
  add_search_options(solve, solve_opts);

  // sweep
  SearchOptions sweep_opts;
  std::string sweep_param;
  std::vector<int> sweep_values;
  std::vector<std::string> sweep_instances, sweep_best_known;
  std::string sweep_out = "sweep.csv";
  bool inverse_n = false;
  auto* sw = app.add_subcommand("sweep", "Vary one beam parameter over a set of instances");
  sw->add_option("--param", sweep_param, "w, q or n")->required()->check(CLI::IsMember({"w", "q", "n", "N"}));
  sw->add_option("--values", sweep_values, "Comma separated values")->required()->delimiter(',');
  sw->add_option("--instance,-i", sweep_instances, "Instance file (repeatable)")->required();
  sw->add_option("--best-known", sweep_best_known, "Best-known objectives, one per instance")->delimiter(',');
  sw->add_option("--out,-o", sweep_out, "Output CSV");
  sw->add_flag("--inverse-n", inverse_n, "On a q sweep keep N*q constant");
  add_search_options(sw, sweep_opts);

  // validate
  std::string val_instance, val_solution;
  auto* val = app.add_subcommand("validate", "Check a solution file against the arc-flow model");
  val->add_option("instance", val_instance, "Instance file")->required();
  val->add_option("solution", val_solution, "Solution file")->required();

  // gen-toy
  std::uint64_t toy_seed = 1;
  int toy_consumers = 1, toy_horizon = 12;
  std::string toy_out;
  auto* gen = app.add_subcommand("gen-toy", "Write a small generated instance");
  gen->add_option("--seed", toy_seed, "Generator seed (1 gives the reference fixture)");
  gen->add_option("--consumers", toy_consumers, "Consumption ports");
  gen->add_option("--horizon", toy_horizon, "Periods");
  gen->add_option("--out,-o", toy_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*solve) {
      Instance inst = load(solve_instance, solve_opts.horizon);
      RunConfig cfg = make_config(solve_opts, solve->count("--seed") > 0);
      cfg.best_known = parse_money_opt(solve_best_known);
      cfg.keep_traces = !dump_beam.empty() || !dump_ils.empty();
      RunRecord rec = run(inst, cfg);
      const ReportOptions ropt{solve_opts.deterministic};
      write_reports(solve_out, {rec}, ropt);

      const SeedRun& best = rec.best_run();
      Solution sol = best.reported().solution;
      const EvalResult& eval = ensure_evaluated(sol, inst);
      auto sol_out = open_out(fs::path(solve_out) / "solution.txt");
      write_solution(sol_out, sol, sol.truncation_mask());
      if (trace) {
        auto tr = open_out(fs::path(solve_out) / "trace.csv");
        write_trace(tr, eval);
      }
      const bool many = rec.runs.size() > 1;
      for (const auto& r : rec.runs) {
        if (!dump_beam.empty()) write_beam_dump(seeded(dump_beam, r.seed, many), r.beam_dump);
        if (!dump_ils.empty()) write_ils_dump(seeded(dump_ils, r.seed, many), r.ils_trace);
      }
      write_main_report(std::cout, {rec}, ropt);
      for (const auto& r : rec.runs)
        if (r.time_limit_hit)
          std::cerr << "seed " << r.seed << ": time limit reached, reporting stage "
                    << (r.stages.empty() ? "none (partial beam search)" : std::string(name(r.reported().stage)))
                    << '\n';
      return kExitOk;
    }

    if (*sw) {
      if (!sweep_best_known.empty() && sweep_best_known.size() != sweep_instances.size())
        throw ConfigError("--best-known needs one value per instance");
      std::vector<SweepJob> jobs;
      for (std::size_t i = 0; i < sweep_instances.size(); ++i)
        jobs.push_back({load(sweep_instances[i], sweep_opts.horizon),
                        sweep_best_known.empty() ? std::nullopt : parse_money_opt(sweep_best_known[i])});
      RunConfig base = make_config(sweep_opts, sw->count("--seed") > 0);
      const SweepParam param = *parse_sweep_param(sweep_param);
      auto rows = sweep(param, sweep_values, base, jobs, inverse_n);
      auto out = open_out(sweep_out);
      write_sweep_report(out, param, rows);
      write_sweep_report(std::cout, param, rows);
      return kExitOk;
    }

    if (*val) {
      Instance inst = load_instance(val_instance);
      std::ifstream in(val_solution);
      if (!in) throw ConfigError("cannot read " + val_solution);
      Solution sol = read_solution(in, inst);
      ValidatorReport rep = check(sol, inst);
      std::cout << describe(rep);
      return rep.clean() && rep.matches_evaluator ? kExitOk : kExitViolations;
    }

    if (*gen) {
      save_instance(toy_out, generate_toy(toy_seed, toy_consumers, toy_horizon));
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InstanceParseError& e) {
    std::cerr << "instance error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InstanceValidationError& e) {
    std::cerr << "instance error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParityError& e) {
    std::cerr << "solution error: " << e.what() << '\n';
    return kExitViolations;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
