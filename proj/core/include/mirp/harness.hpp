#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mirp/beam.hpp"
#include "mirp/ils.hpp"
#include "mirp/instance.hpp"
#include "mirp/money.hpp"
#include "mirp/solution.hpp"

namespace mirp {

/// Pipeline stages; each one includes the previous.
enum class Stage { BS = 0, LS = 1, ILS = 2 };

std::string_view name(Stage s);
std::optional<Stage> parse_stage(std::string_view text);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  BeamConfig beam;
  IlsConfig ils;
  Stage stage = Stage::ILS;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  /// Per seed. Empty means no limit.
  std::optional<double> time_limit_seconds = 90000.0;
  std::optional<Money> best_known;
  /// Seeds run concurrently on this many threads.
  int jobs = 1;
  /// Keep the beam dump and ILS trace of every seed.
  bool keep_traces = false;
};

/// Throws ConfigError on contradictions (no seeds, bad limits, invalid
/// module configs, nonpositive best-known value).
void validate(const RunConfig& cfg);

struct StageResult {
  Stage stage;
  Money cost;
  Solution solution;
  /// Wall time spent in this stage alone.
  double seconds = 0.0;
};

struct SeedRun {
  std::uint64_t seed = 0;
  /// Completed stages in order; the last one is what gets reported.
  std::vector<StageResult> stages;
  /// Best solution found when not even the beam search completed.
  std::optional<StageResult> partial;
  bool time_limit_hit = false;
  double total_seconds = 0.0;
  /// RVND descents run in LS and ILS, and how many ended above their start.
  int rvnd_calls = 0;
  int rvnd_increases = 0;
  std::vector<BeamDumpRow> beam_dump;
  std::vector<IlsTraceRow> ils_trace;

  /// Reported result: the last completed stage, else the partial one.
  const StageResult& reported() const;
  const StageResult* stage(Stage s) const;
};

struct RunRecord {
  std::string instance;
  std::string difficulty_class;
  int beam_width = 0;
  std::optional<Money> best_known;
  std::vector<SeedRun> runs;

  Money best_cost() const;
  /// Mean over seeds, rounded to cents.
  Money average_cost() const;
  std::optional<double> best_gap() const;
  /// Mean of the per-seed gaps.
  std::optional<double> average_gap() const;
  double average_seconds() const;
  double total_seconds() const;
  const SeedRun& best_run() const;
};

/// Beam search, RVND on every pool solution, ILS on the best of them; per
/// seed, stopping after cfg.stage or when the time limit passes.
SeedRun run_seed(const Instance& inst, const RunConfig& cfg, std::uint64_t seed);
RunRecord run(const Instance& inst, const RunConfig& cfg);

struct ReportOptions {
  /// Write zero for every time column, so reports compare byte for byte.
  bool deterministic = false;
};

/// One row of the main table, with every value at printed precision.
struct MainRow {
  std::string instance;
  int n = 0;
  std::string difficulty_class;
  std::optional<Money> obj;
  Money best_cost;
  std::optional<double> best_gap;
  Money average_cost;
  std::optional<double> average_gap;
  double time_hours = 0.0;

  bool operator==(const MainRow&) const = default;
};

MainRow summarize(const RunRecord& r, const ReportOptions& opt = {});

inline constexpr const char* kMainHeader =
    "Instance,N,Class,Obj,BestTotalCost,BestGap,AverageTotalCost,AverageGap,TimeHours";
inline constexpr const char* kStageHeader =
    "Instance,N,BSCost,BSTime,LSCost,LSTime,ILSCost,ILSTime,TotalTimeSeconds";
inline constexpr const char* kPlotHeader = "Instance,N,Class,Seed,Stage,Cost,Gap,TimeSeconds";

void write_main_report(std::ostream& out, const std::vector<RunRecord>& records, const ReportOptions& opt = {});
void write_stage_report(std::ostream& out, const std::vector<RunRecord>& records, const ReportOptions& opt = {});
void write_plot_report(std::ostream& out, const std::vector<RunRecord>& records, const ReportOptions& opt = {});

/// Reads a main table. Throws std::runtime_error on a malformed header or row.
std::vector<MainRow> parse_report(std::istream& in);

enum class SweepParam { W, Q, N };
std::optional<SweepParam> parse_sweep_param(std::string_view text);

struct SweepJob {
  Instance instance;
  std::optional<Money> best_known;
};

struct SweepRow {
  int value = 0;
  int n = 0;
  int w = 0;
  int q = 0;
  Money average_cost;
  Money median_cost;
  std::optional<double> average_gap;
  std::optional<double> median_gap;
  std::vector<RunRecord> records;
};

/// Runs every job once per value of `param`, overriding it in `base`. With
/// `inverse_n` on a q sweep, N is rescaled so that N*q stays at the base
/// product. Costs and gaps are pooled over all jobs and seeds; gaps only
/// when every job has a best-known value.
std::vector<SweepRow> sweep(SweepParam param, const std::vector<int>& values, const RunConfig& base,
                            const std::vector<SweepJob>& jobs, bool inverse_n = false);

inline constexpr const char* kSweepHeader = "Param,Value,N,W,Q,AverageCost,MedianCost,AverageGap,MedianGap";
void write_sweep_report(std::ostream& out, SweepParam param, const std::vector<SweepRow>& rows);

}  // namespace mirp
