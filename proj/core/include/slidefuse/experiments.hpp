#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slidefuse/baselines.hpp"
#include "slidefuse/metrics.hpp"
#include "slidefuse/slidefuse.hpp"
#include "slidefuse/stats.hpp"
#include "slidefuse/types.hpp"

namespace slidefuse {

enum class Algorithm { combmnz, probfuse, segfuse, slidefuse };

/// Report column order.
inline constexpr std::array<Algorithm, 4> kAlgorithms = {
    Algorithm::combmnz, Algorithm::probfuse, Algorithm::segfuse, Algorithm::slidefuse};
inline constexpr std::array<Measure, 3> kMeasures = {Measure::map, Measure::bpref, Measure::p10};

/// Display name ("CombMNZ", "SlideFuse", ...).
std::string_view algorithm_name(Algorithm algorithm);
/// Accepts the lower-case CLI names; throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view name);
bool needs_training(Algorithm algorithm) noexcept;

struct FusionParams {
  std::size_t halfwidth = kDefaultHalfwidth;
  std::size_t probfuse_segments = kDefaultProbFuseSegments;
};

/// Trains `algorithm` on `training` (ignored by CombMNZ) and fuses every
/// query in `targets`. Each target gets an entry, empty if no system
/// answered it.
FusedRun fuse_queries(Algorithm algorithm, std::span<const SystemRun> runs,
                      const QuerySet& training, std::span<const QueryId> targets,
                      const Qrels& qrels, const FusionParams& params);

struct QuerySplit {
  std::vector<QueryId> training;
  std::vector<QueryId> test;
};

/// Number of training queries: floor(fraction * total), at least 1.
std::size_t training_size(double fraction, std::size_t total);

/// Shuffles `query_ids` with the engine keyed by (seed, shuffle_index) and
/// cuts off the first training_size() queries for training.
/// Throws std::invalid_argument for fewer than 2 queries or a fraction
/// outside (0, 1).
QuerySplit split_queries(std::span<const QueryId> query_ids, double fraction, std::uint64_t seed,
                         std::uint64_t shuffle_index);

/// Sorted union of the query ids answered by any run.
std::vector<QueryId> query_universe(std::span<const SystemRun> runs);

struct ExperimentSettings {
  std::size_t shuffle_count = 5;
  double training_fraction = 0.10;
  FusionParams fusion;
  std::uint64_t seed = 0;
};

/// Files for one experimental run: a group of topfiles fused together.
struct RunGroupSpec {
  std::string name;
  std::vector<std::string> run_paths;
};

struct ExperimentConfig {
  std::vector<RunGroupSpec> groups;
  std::string qrels_path;
  ExperimentSettings settings;
  std::vector<double> sweep_fractions = {0.10, 0.20, 0.30, 0.40, 0.50};
  Measure sweep_measure = Measure::map;
};

/// Config file problems; `keys()` names every offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::vector<std::string> keys);
  const std::vector<std::string>& keys() const noexcept { return keys_; }

 private:
  std::vector<std::string> keys_;
};

/// Parses a JSON experiment config. Relative paths resolve against
/// `base_dir`. Unknown keys, missing required keys, wrongly typed values and
/// violated invariants are all collected into one ConfigError.
ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir);
ExperimentConfig load_config(const std::string& path);

/// Ordinal label used for unnamed groups: "first", "second", ...
std::string ordinal_name(std::size_t index);

/// Parsed topfiles of one experimental run.
struct RunGroup {
  std::string name;
  std::vector<SystemRun> runs;
};

/// Loads every group's run files. Throws ParseError on bad input and
/// std::invalid_argument for a group with fewer than two systems.
std::vector<RunGroup> load_groups(const ExperimentConfig& config);

using ScoreTable = std::array<std::array<double, kMeasures.size()>, kAlgorithms.size()>;

/// SlideFuse against the best of the other algorithms for one metric.
struct Comparison {
  Algorithm best_other = Algorithm::combmnz;
  /// (SlideFuse - best) / best * 100; NaN when best is zero.
  double vs_best_percent = 0.0;
  /// Only group rows carry a significance test.
  bool tested = false;
  TTestResult test;
};

struct GroupResult {
  std::string name;
  /// [algorithm][measure], each the mean over shuffles.
  ScoreTable scores{};
  std::array<Comparison, kMeasures.size()> comparisons{};
  /// Per-query scores averaged over the shuffles in which the query was a
  /// test query; [algorithm][measure].
  std::array<std::array<std::map<QueryId, double>, kMeasures.size()>, kAlgorithms.size()>
      per_query;
};

struct ExperimentReport {
  ExperimentSettings settings;
  std::vector<GroupResult> groups;
  /// Arithmetic mean of the group rows.
  ScoreTable average{};
  std::array<Comparison, kMeasures.size()> average_comparisons{};

  double score(std::size_t group, Algorithm algorithm, Measure measure) const;
  double average_score(Algorithm algorithm, Measure measure) const;
};

std::size_t algorithm_index(Algorithm algorithm) noexcept;
std::size_t measure_index(Measure measure) noexcept;

/// Runs the full protocol on already-parsed groups.
ExperimentReport run_experiment(std::span<const RunGroup> groups, const Qrels& qrels,
                                const ExperimentSettings& settings);
/// Loads the config's files and runs the protocol.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct SweepRow {
  std::string name;
  /// [algorithm][fraction]
  std::array<std::vector<double>, kAlgorithms.size()> values;
  /// NaN when the mean over fractions is zero.
  std::array<double, kAlgorithms.size()> cv{};
};

struct SweepTable {
  std::vector<double> fractions;
  Measure measure = Measure::map;
  std::vector<SweepRow> rows;
};

/// Repeats the protocol at each training fraction and tabulates the
/// coefficient of variation of each algorithm's score across fractions.
SweepTable training_size_sweep(std::span<const RunGroup> groups, const Qrels& qrels,
                               const ExperimentSettings& settings,
                               std::span<const double> fractions, Measure measure);
SweepTable training_size_sweep(const ExperimentConfig& config);

// Rendering. All output is a deterministic function of the inputs.
void write_report_text(std::ostream& out, const ExperimentReport& report);
void write_report_tsv(std::ostream& out, const ExperimentReport& report);
void write_sweep_text(std::ostream& out, const SweepTable& table);
void write_sweep_tsv(std::ostream& out, const SweepTable& table);

}  // namespace slidefuse
