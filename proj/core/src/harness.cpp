#include "mirp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "mirp/evaluator.hpp"
#include "mirp/localsearch.hpp"

namespace mirp {

std::string_view name(Stage s) {
  switch (s) {
    case Stage::BS: return "bs";
    case Stage::LS: return "ls";
    case Stage::ILS: return "ils";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view text) {
  if (text == "bs") return Stage::BS;
  if (text == "ls") return Stage::LS;
  if (text == "ils") return Stage::ILS;
  return std::nullopt;
}

void validate(const RunConfig& cfg) {
  if (cfg.seeds.empty()) throw ConfigError("at least one seed is required");
  if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (cfg.time_limit_seconds && !(*cfg.time_limit_seconds > 0.0))
    throw ConfigError("time limit must be positive");
  if (cfg.best_known && cfg.best_known->cents() <= 0) throw ConfigError("best-known value must be positive");
  try {
    validate(cfg.beam);
    validate(cfg.ils);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

const StageResult& SeedRun::reported() const {
  if (!stages.empty()) return stages.back();
  return *partial;
}

const StageResult* SeedRun::stage(Stage s) const {
  for (const auto& st : stages)
    if (st.stage == s) return &st;
  return nullptr;
}

namespace {

double seconds_since(Deadline::Clock::time_point t0) {
  return std::chrono::duration<double>(Deadline::Clock::now() - t0).count();
}

double round_to(double x, double scale) {
  const double r = std::round(x * scale) / scale;
  return r == 0.0 ? 0.0 : r;  // folds -0
}

}  // namespace

SeedRun run_seed(const Instance& inst, const RunConfig& cfg, std::uint64_t seed) {
  SeedRun out;
  out.seed = seed;
  const Deadline deadline(cfg.time_limit_seconds);

  BeamConfig bc = cfg.beam;
  bc.seed = seed;
  auto t0 = Deadline::Clock::now();
  BeamResult bs = run_beam_search(inst, bc, &deadline);
  StageResult bs_stage{Stage::BS, bs.best_cost, bs.best, seconds_since(t0)};
  if (cfg.keep_traces) out.beam_dump = bs.dump;
  if (!bs.completed) {
    out.time_limit_hit = true;
    out.partial = std::move(bs_stage);
    out.total_seconds = deadline.elapsed();
    return out;
  }
  out.stages.push_back(std::move(bs_stage));

  if (cfg.stage >= Stage::LS) {
    t0 = Deadline::Clock::now();
    std::optional<StageResult> best;
    bool finished = true;
    for (std::size_t i = 0; i < bs.pool.size(); ++i) {
      if (deadline.expired()) {
        finished = false;
        break;
      }
      RvndStats stats;
      Solution improved = rvnd(bs.pool[i], inst, derive_seed(seed, {1, i}), &stats);
      ++out.rvnd_calls;
      if (stats.start_cost < stats.end_cost) ++out.rvnd_increases;
      const Money cost = ensure_evaluated(improved, inst).total_cost;
      if (!best || cost < best->cost) best = StageResult{Stage::LS, cost, std::move(improved), 0.0};
    }
    if (finished && best) {
      best->seconds = seconds_since(t0);
      out.stages.push_back(std::move(*best));
    } else {
      out.time_limit_hit = true;
    }
  }

  if (cfg.stage >= Stage::ILS && out.stages.back().stage == Stage::LS) {
    t0 = Deadline::Clock::now();
    IlsConfig ic = cfg.ils;
    ic.seed = derive_seed(seed, {2});
    IlsResult ils = run_ils(out.stages.back().solution, inst, ic, &deadline);
    if (cfg.keep_traces) out.ils_trace = ils.trace;
    out.rvnd_calls += ils.rvnd_calls;
    out.rvnd_increases += ils.rvnd_increases;
    if (ils.completed)
      out.stages.push_back(StageResult{Stage::ILS, ils.best_cost, std::move(ils.best), seconds_since(t0)});
    else
      out.time_limit_hit = true;
  }
  out.total_seconds = deadline.elapsed();
  return out;
}

RunRecord run(const Instance& inst, const RunConfig& cfg) {
  validate(cfg);
  RunRecord rec;
  rec.instance = inst.name;
  rec.difficulty_class = inst.difficulty_class;
  rec.beam_width = cfg.beam.beam_width;
  rec.best_known = cfg.best_known;
  rec.runs.resize(cfg.seeds.size());

  const int n = static_cast<int>(cfg.seeds.size());
  const int workers = std::max(1, std::min(cfg.jobs, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) rec.runs[static_cast<std::size_t>(i)] = run_seed(inst, cfg, cfg.seeds[static_cast<std::size_t>(i)]);
    return rec;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers)
          rec.runs[static_cast<std::size_t>(i)] = run_seed(inst, cfg, cfg.seeds[static_cast<std::size_t>(i)]);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rec;
}

const SeedRun& RunRecord::best_run() const {
  return *std::min_element(runs.begin(), runs.end(), [](const SeedRun& a, const SeedRun& b) {
    return a.reported().cost < b.reported().cost;
  });
}

Money RunRecord::best_cost() const { return best_run().reported().cost; }

Money RunRecord::average_cost() const {
  long double sum = 0;
  for (const auto& r : runs) sum += static_cast<long double>(r.reported().cost.cents());
  return Money::from_cents(static_cast<std::int64_t>(std::llround(sum / static_cast<long double>(runs.size()))));
}

std::optional<double> RunRecord::best_gap() const {
  if (!best_known) return std::nullopt;
  return gap_percent(best_cost(), *best_known);
}

std::optional<double> RunRecord::average_gap() const {
  if (!best_known) return std::nullopt;
  double sum = 0.0;
  for (const auto& r : runs) sum += gap_percent(r.reported().cost, *best_known);
  return sum / static_cast<double>(runs.size());
}

double RunRecord::average_seconds() const { return total_seconds() / static_cast<double>(runs.size()); }

double RunRecord::total_seconds() const {
  double sum = 0.0;
  for (const auto& r : runs) sum += r.total_seconds;
  return sum;
}

MainRow summarize(const RunRecord& r, const ReportOptions& opt) {
  MainRow m;
  m.instance = r.instance;
  m.n = r.beam_width;
  m.difficulty_class = r.difficulty_class;
  m.obj = r.best_known;
  m.best_cost = r.best_cost();
  m.average_cost = r.average_cost();
  if (auto g = r.best_gap()) m.best_gap = round_to(*g, 100.0);
  if (auto g = r.average_gap()) m.average_gap = round_to(*g, 100.0);
  m.time_hours = opt.deterministic ? 0.0 : round_to(r.average_seconds() / 3600.0, 1e6);
  return m;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string fixed(double x, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << (x == 0.0 ? 0.0 : x);
  return os.str();
}

std::string opt_gap(const std::optional<double>& g) { return g ? format_percent(*g) : ""; }

double time_or_zero(double seconds, const ReportOptions& opt) { return opt.deterministic ? 0.0 : seconds; }

}  // namespace

void write_main_report(std::ostream& out, const std::vector<RunRecord>& records, const ReportOptions& opt) {
  out << kMainHeader << '\n';
  for (const auto& r : records) {
    const MainRow m = summarize(r, opt);
    out << csv_field(m.instance) << ',' << m.n << ',' << csv_field(m.difficulty_class) << ','
        << (m.obj ? m.obj->str() : "") << ',' << m.best_cost.str() << ',' << opt_gap(m.best_gap) << ','
        << m.average_cost.str() << ',' << opt_gap(m.average_gap) << ',' << fixed(m.time_hours, 6) << '\n';
  }
}

void write_stage_report(std::ostream& out, const std::vector<RunRecord>& records, const ReportOptions& opt) {
  out << kStageHeader << '\n';
  for (const auto& r : records) {
    out << csv_field(r.instance) << ',' << r.beam_width;
    for (Stage s : {Stage::BS, Stage::LS, Stage::ILS}) {
      std::optional<Money> best;
      double seconds = 0.0;
      int reached = 0;
      for (const auto& run : r.runs) {
        if (const auto* st = run.stage(s)) {
          if (!best || st->cost < *best) best = st->cost;
          seconds += st->seconds;
          ++reached;
        }
      }
      out << ',' << (best ? best->str() : "") << ','
          << (reached ? fixed(time_or_zero(seconds / reached, opt), 3) : "");
    }
    out << ',' << fixed(time_or_zero(r.total_seconds(), opt), 3) << '\n';
  }
}

void write_plot_report(std::ostream& out, const std::vector<RunRecord>& records, const ReportOptions& opt) {
  out << kPlotHeader << '\n';
  for (const auto& r : records) {
    for (const auto& run : r.runs) {
      double elapsed = 0.0;
      for (const auto& st : run.stages) {
        elapsed += st.seconds;
        out << csv_field(r.instance) << ',' << r.beam_width << ',' << csv_field(r.difficulty_class) << ','
            << run.seed << ',' << name(st.stage) << ',' << st.cost.str() << ','
            << (r.best_known ? format_percent(gap_percent(st.cost, *r.best_known)) : "") << ','
            << fixed(time_or_zero(elapsed, opt), 3) << '\n';
      }
    }
  }
}

std::vector<MainRow> parse_report(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMainHeader) throw std::runtime_error("main report: unexpected header");
  std::vector<MainRow> rows;
  int lineno = 1;
  auto money = [&](const std::string& s) {
    auto m = Money::parse(s);
    if (!m) throw std::runtime_error("main report line " + std::to_string(lineno) + ": bad amount '" + s + "'");
    return *m;
  };
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error("main report line " + std::to_string(lineno) + ": bad number '" + s + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 9) throw std::runtime_error("main report line " + std::to_string(lineno) + ": expected 9 fields");
    MainRow m;
    m.instance = f[0];
    m.n = static_cast<int>(number(f[1]));
    m.difficulty_class = f[2];
    if (!f[3].empty()) m.obj = money(f[3]);
    m.best_cost = money(f[4]);
    if (!f[5].empty()) m.best_gap = round_to(number(f[5]), 100.0);
    m.average_cost = money(f[6]);
    if (!f[7].empty()) m.average_gap = round_to(number(f[7]), 100.0);
    m.time_hours = number(f[8]);
    rows.push_back(std::move(m));
  }
  return rows;
}

std::optional<SweepParam> parse_sweep_param(std::string_view text) {
  if (text == "w") return SweepParam::W;
  if (text == "q") return SweepParam::Q;
  if (text == "n" || text == "N") return SweepParam::N;
  return std::nullopt;
}

namespace {

template <class T>
T lower_median_of(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

}  // namespace

std::vector<SweepRow> sweep(SweepParam param, const std::vector<int>& values, const RunConfig& base,
                            const std::vector<SweepJob>& jobs, bool inverse_n) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (jobs.empty()) throw ConfigError("sweep needs at least one instance");
  const long long product = static_cast<long long>(base.beam.beam_width) * base.beam.greedy.q;
  const bool all_known = std::all_of(jobs.begin(), jobs.end(), [](const SweepJob& j) { return j.best_known.has_value(); });

  std::vector<SweepRow> rows;
  for (int value : values) {
    RunConfig cfg = base;
    switch (param) {
      case SweepParam::W: cfg.beam.max_children = value; break;
      case SweepParam::N: cfg.beam.beam_width = value; break;
      case SweepParam::Q:
        cfg.beam.greedy.q = value;
        if (inverse_n && value > 0)
          cfg.beam.beam_width = static_cast<int>(std::max<long long>(1, std::llround(static_cast<double>(product) / value)));
        break;
    }
    validate(cfg);
    SweepRow row;
    row.value = value;
    row.n = cfg.beam.beam_width;
    row.w = cfg.beam.max_children;
    row.q = cfg.beam.greedy.q;
    std::vector<Money> costs;
    std::vector<double> gaps;
    for (const auto& job : jobs) {
      cfg.best_known = job.best_known;
      row.records.push_back(run(job.instance, cfg));
      for (const auto& r : row.records.back().runs) {
        costs.push_back(r.reported().cost);
        if (all_known) gaps.push_back(gap_percent(r.reported().cost, *job.best_known));
      }
    }
    long double sum = 0;
    for (auto c : costs) sum += static_cast<long double>(c.cents());
    row.average_cost = Money::from_cents(static_cast<std::int64_t>(std::llround(sum / costs.size())));
    row.median_cost = lower_median_of(costs);
    if (all_known) {
      row.average_gap = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
      row.median_gap = lower_median_of(gaps);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_report(std::ostream& out, SweepParam param, const std::vector<SweepRow>& rows) {
  const char* pname = param == SweepParam::W ? "w" : param == SweepParam::Q ? "q" : "n";
  out << kSweepHeader << '\n';
  for (const auto& r : rows)
    out << pname << ',' << r.value << ',' << r.n << ',' << r.w << ',' << r.q << ',' << r.average_cost.str() << ','
        << r.median_cost.str() << ',' << opt_gap(r.average_gap) << ',' << opt_gap(r.median_gap) << '\n';
}

}  // namespace mirp
