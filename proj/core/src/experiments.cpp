#include "slidefuse/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "slidefuse/corpus_io.hpp"
#include "slidefuse/shuffle.hpp"

namespace slidefuse {

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::combmnz: return "CombMNZ";
    case Algorithm::probfuse: return "ProbFuse";
    case Algorithm::segfuse: return "SegFuse";
    case Algorithm::slidefuse: return "SlideFuse";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "combmnz") return Algorithm::combmnz;
  if (name == "probfuse") return Algorithm::probfuse;
  if (name == "segfuse") return Algorithm::segfuse;
  if (name == "slidefuse") return Algorithm::slidefuse;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

bool needs_training(Algorithm algorithm) noexcept { return algorithm != Algorithm::combmnz; }

std::size_t algorithm_index(Algorithm algorithm) noexcept {
  return static_cast<std::size_t>(
      std::find(kAlgorithms.begin(), kAlgorithms.end(), algorithm) - kAlgorithms.begin());
}

std::size_t measure_index(Measure measure) noexcept {
  return static_cast<std::size_t>(std::find(kMeasures.begin(), kMeasures.end(), measure) -
                                  kMeasures.begin());
}

// ---------------------------------------------------------------------------
// Fusion over a query set

namespace {

std::vector<ResultList> lists_for(std::span<const SystemRun> runs, const QueryId& qid) {
  std::vector<ResultList> lists;
  lists.reserve(runs.size());
  for (const auto& run : runs) {
    const ResultList* list = run.find(qid);
    lists.push_back(list ? *list : ResultList{qid, {}});
  }
  return lists;
}

}  // namespace

FusedRun fuse_queries(Algorithm algorithm, std::span<const SystemRun> runs,
                      const QuerySet& training, std::span<const QueryId> targets,
                      const Qrels& qrels, const FusionParams& params) {
  FusedRun fused;
  switch (algorithm) {
    case Algorithm::combmnz:
      for (const auto& qid : targets) {
        FusedList list = combmnz(lists_for(runs, qid));
        list.query_id = qid;
        fused.emplace(qid, std::move(list));
      }
      break;
    case Algorithm::slidefuse: {
      FusionEnsemble ensemble;
      for (const auto& run : runs) ensemble.add(run, build_profile(run, training, qrels));
      for (const auto& qid : targets) fused.emplace(qid, fuse(ensemble, qid, params.halfwidth));
      break;
    }
    case Algorithm::probfuse:
    case Algorithm::segfuse: {
      const bool prob = algorithm == Algorithm::probfuse;
      std::vector<SegmentProfile> profiles;
      profiles.reserve(runs.size());
      for (const auto& run : runs) {
        profiles.push_back(prob ? probfuse_train(run, training, qrels, params.probfuse_segments)
                                : segfuse_train(run, training, qrels));
      }
      for (const auto& qid : targets) {
        const auto lists = lists_for(runs, qid);
        FusedList list = prob ? probfuse_fuse(lists, profiles) : segfuse_fuse(lists, profiles);
        list.query_id = qid;
        fused.emplace(qid, std::move(list));
      }
      break;
    }
  }
  return fused;
}

// ---------------------------------------------------------------------------
// Query splits

std::size_t training_size(double fraction, std::size_t total) {
  // The epsilon keeps products like 0.29 * 100 = 28.999999999999996 at 29.
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(total) + 1e-9));
  return std::max<std::size_t>(count, 1);
}

QuerySplit split_queries(std::span<const QueryId> query_ids, double fraction, std::uint64_t seed,
                         std::uint64_t shuffle_index) {
  if (query_ids.size() < 2) {
    throw std::invalid_argument("split_queries: need at least 2 queries, got " +
                                std::to_string(query_ids.size()));
  }
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("split_queries: training fraction must lie in (0, 1)");
  }
  std::vector<QueryId> order(query_ids.begin(), query_ids.end());
  auto engine = make_engine(seed, shuffle_index);
  deterministic_shuffle(order, engine);
  const std::size_t cut = std::min(training_size(fraction, order.size()), order.size() - 1);
  QuerySplit split;
  split.training.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
  return split;
}

std::vector<QueryId> query_universe(std::span<const SystemRun> runs) {
  std::set<QueryId> ids;
  for (const auto& run : runs) {
    for (const auto& [qid, list] : run.lists) ids.insert(qid);
  }
  return {ids.begin(), ids.end()};
}

// ---------------------------------------------------------------------------
// Config

ConfigError::ConfigError(const std::string& what, std::vector<std::string> keys)
    : std::runtime_error(what), keys_(std::move(keys)) {}

std::string ordinal_name(std::size_t index) {
  static constexpr std::array<std::string_view, 10> kNames = {
      "first", "second", "third", "fourth", "fifth",
      "sixth", "seventh", "eighth", "ninth", "tenth"};
  if (index < kNames.size()) return std::string(kNames[index]);
  return "group" + std::to_string(index + 1);
}

namespace {

using nlohmann::json;

class ConfigReader {
 public:
  void fail(std::string key, const std::string& problem) {
    problems_.push_back(key + ": " + problem);
    keys_.push_back(std::move(key));
  }

  bool ok() const { return problems_.empty(); }

  [[noreturn]] void raise() const {
    std::string what = "invalid experiment config";
    for (const auto& p : problems_) what += "\n  " + p;
    throw ConfigError(what, keys_);
  }

 private:
  std::vector<std::string> problems_;
  std::vector<std::string> keys_;
};

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  return p.lexically_normal().string();
}

template <typename T>
void read_unsigned(const json& doc, const char* key, T& out, T minimum, ConfigReader& reader) {
  if (!doc.contains(key)) return;
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
    reader.fail(key, "expected an integer >= " + std::to_string(minimum));
    return;
  }
  out = v.get<T>();
}

bool valid_fraction(const json& v) {
  if (!v.is_number()) return false;
  const double f = v.get<double>();
  return f > 0.0 && f < 1.0;
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what(), {"<document>"});
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object", {"<document>"});

  static const std::set<std::string> kKnown = {"qrels",    "groups", "shuffles",
                                               "train_fraction", "w", "segments",
                                               "seed",     "sweep_fractions", "sweep_metric"};
  ConfigReader reader;
  ExperimentConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (!kKnown.contains(key)) reader.fail(key, "unknown key");
  }

  if (!doc.contains("qrels")) {
    reader.fail("qrels", "missing required key");
  } else if (!doc["qrels"].is_string()) {
    reader.fail("qrels", "expected a path string");
  } else {
    config.qrels_path = resolve(base_dir, doc["qrels"].get<std::string>());
  }

  if (!doc.contains("groups")) {
    reader.fail("groups", "missing required key");
  } else if (!doc["groups"].is_array() || doc["groups"].empty()) {
    reader.fail("groups", "expected a non-empty array");
  } else {
    std::map<std::string, std::string> used;
    const json& groups = doc["groups"];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const std::string gkey = "groups[" + std::to_string(g) + "]";
      RunGroupSpec spec{ordinal_name(g), {}};
      const json* runs = nullptr;
      if (groups[g].is_array()) {
        runs = &groups[g];
      } else if (groups[g].is_object()) {
        for (const auto& [key, value] : groups[g].items()) {
          if (key != "name" && key != "runs") reader.fail(gkey + "." + key, "unknown key");
        }
        if (groups[g].contains("name")) {
          if (groups[g]["name"].is_string()) {
            spec.name = groups[g]["name"].get<std::string>();
          } else {
            reader.fail(gkey + ".name", "expected a string");
          }
        }
        if (groups[g].contains("runs")) runs = &groups[g]["runs"];
      }
      if (runs == nullptr || !runs->is_array()) {
        reader.fail(gkey, "expected an array of run paths or {\"name\", \"runs\"}");
        continue;
      }
      const std::string rkey = groups[g].is_object() ? gkey + ".runs" : gkey;
      if (runs->size() < 2) reader.fail(rkey, "a group needs at least 2 run files");
      for (std::size_t r = 0; r < runs->size(); ++r) {
        const std::string key = rkey + "[" + std::to_string(r) + "]";
        if (!(*runs)[r].is_string()) {
          reader.fail(key, "expected a path string");
          continue;
        }
        std::string path = resolve(base_dir, (*runs)[r].get<std::string>());
        auto [it, inserted] = used.emplace(path, key);
        if (!inserted) {
          reader.fail(key, "topfile already used by " + it->second);
          continue;
        }
        spec.run_paths.push_back(std::move(path));
      }
      config.groups.push_back(std::move(spec));
    }
  }

  auto& settings = config.settings;
  read_unsigned<std::size_t>(doc, "shuffles", settings.shuffle_count, 1, reader);
  read_unsigned<std::size_t>(doc, "w", settings.fusion.halfwidth, 0, reader);
  read_unsigned<std::size_t>(doc, "segments", settings.fusion.probfuse_segments, 1, reader);
  read_unsigned<std::uint64_t>(doc, "seed", settings.seed, 0, reader);
  if (doc.contains("train_fraction")) {
    if (valid_fraction(doc["train_fraction"])) {
      settings.training_fraction = doc["train_fraction"].get<double>();
    } else {
      reader.fail("train_fraction", "expected a number in (0, 1)");
    }
  }
  if (doc.contains("sweep_fractions")) {
    const json& fractions = doc["sweep_fractions"];
    if (!fractions.is_array() || fractions.empty()) {
      reader.fail("sweep_fractions", "expected a non-empty array");
    } else {
      config.sweep_fractions.clear();
      for (std::size_t i = 0; i < fractions.size(); ++i) {
        if (!valid_fraction(fractions[i])) {
          reader.fail("sweep_fractions[" + std::to_string(i) + "]", "expected a number in (0, 1)");
        } else {
          config.sweep_fractions.push_back(fractions[i].get<double>());
        }
      }
    }
  }
  if (doc.contains("sweep_metric")) {
    try {
      if (!doc["sweep_metric"].is_string()) throw std::invalid_argument("not a string");
      config.sweep_measure = parse_measure(doc["sweep_metric"].get<std::string>());
    } catch (const std::invalid_argument&) {
      reader.fail("sweep_metric", "expected one of \"map\", \"bpref\", \"p10\"");
    }
  }

  if (!reader.ok()) reader.raise();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", {"<file>"});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::filesystem::path(path).parent_path().string());
}

std::vector<RunGroup> load_groups(const ExperimentConfig& config) {
  std::vector<RunGroup> groups;
  for (const auto& spec : config.groups) {
    if (spec.run_paths.size() < 2) {
      throw std::invalid_argument("group '" + spec.name + "' needs at least 2 systems");
    }
    RunGroup group{spec.name, {}};
    for (const auto& path : spec.run_paths) group.runs.push_back(load_run_file(path));
    groups.push_back(std::move(group));
  }
  return groups;
}

// ---------------------------------------------------------------------------
// Protocol

double ExperimentReport::score(std::size_t group, Algorithm algorithm, Measure measure) const {
  return groups.at(group).scores[algorithm_index(algorithm)][measure_index(measure)];
}

double ExperimentReport::average_score(Algorithm algorithm, Measure measure) const {
  return average[algorithm_index(algorithm)][measure_index(measure)];
}

namespace {

constexpr std::size_t kSlide = 3;
static_assert(kAlgorithms[kSlide] == Algorithm::slidefuse);

Comparison compare_with_best(const ScoreTable& scores, std::size_t m) {
  Comparison c;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < kSlide; ++a) {
    if (scores[a][m] > best) {
      best = scores[a][m];
      c.best_other = kAlgorithms[a];
    }
  }
  c.vs_best_percent = best != 0.0 ? (scores[kSlide][m] - best) / best * 100.0
                                  : std::numeric_limits<double>::quiet_NaN();
  return c;
}

struct Accumulator {
  double sum = 0.0;
  std::size_t count = 0;
};

GroupResult evaluate_group(const RunGroup& group, const Qrels& qrels,
                           const ExperimentSettings& settings) {
  if (group.runs.size() < 2) {
    throw std::invalid_argument("group '" + group.name + "' needs at least 2 systems");
  }
  if (settings.shuffle_count == 0) throw std::invalid_argument("shuffle count must be positive");
  const auto universe = query_universe(group.runs);

  GroupResult result;
  result.name = group.name;
  std::array<std::array<std::map<QueryId, Accumulator>, kMeasures.size()>, kAlgorithms.size()> acc;

  for (std::size_t shuffle = 0; shuffle < settings.shuffle_count; ++shuffle) {
    const QuerySplit split =
        split_queries(universe, settings.training_fraction, settings.seed, shuffle);
    const QuerySet training(split.training.begin(), split.training.end());
    for (std::size_t a = 0; a < kAlgorithms.size(); ++a) {
      const FusedRun fused =
          fuse_queries(kAlgorithms[a], group.runs, training, split.test, qrels, settings.fusion);
      const RunEvaluation eval = evaluate_run(fused, qrels);
      for (std::size_t m = 0; m < kMeasures.size(); ++m) {
        const MetricScores& scores = eval[kMeasures[m]];
        result.scores[a][m] += scores.mean;
        for (const auto& [qid, value] : scores.per_query) {
          auto& slot = acc[a][m][qid];
          slot.sum += value;
          ++slot.count;
        }
      }
    }
  }

  const auto shuffles = static_cast<double>(settings.shuffle_count);
  for (std::size_t a = 0; a < kAlgorithms.size(); ++a) {
    for (std::size_t m = 0; m < kMeasures.size(); ++m) {
      result.scores[a][m] /= shuffles;
      for (const auto& [qid, slot] : acc[a][m]) {
        result.per_query[a][m].emplace(qid, slot.sum / static_cast<double>(slot.count));
      }
    }
  }

  for (std::size_t m = 0; m < kMeasures.size(); ++m) {
    Comparison c = compare_with_best(result.scores, m);
    const auto& slide = result.per_query[kSlide][m];
    const auto& other = result.per_query[algorithm_index(c.best_other)][m];
    std::vector<double> a, b;
    for (const auto& [qid, value] : slide) {
      auto it = other.find(qid);
      if (it == other.end()) continue;
      a.push_back(value);
      b.push_back(it->second);
    }
    if (a.size() >= 2) {
      c.test = paired_t_test(a, b);
      c.tested = true;
    }
    result.comparisons[m] = c;
  }
  return result;
}

}  // namespace

ExperimentReport run_experiment(std::span<const RunGroup> groups, const Qrels& qrels,
                                const ExperimentSettings& settings) {
  if (groups.empty()) throw std::invalid_argument("run_experiment: no run groups");
  ExperimentReport report;
  report.settings = settings;
  for (const auto& group : groups) report.groups.push_back(evaluate_group(group, qrels, settings));

  const auto n = static_cast<double>(report.groups.size());
  for (std::size_t a = 0; a < kAlgorithms.size(); ++a) {
    for (std::size_t m = 0; m < kMeasures.size(); ++m) {
      double sum = 0.0;
      for (const auto& g : report.groups) sum += g.scores[a][m];
      report.average[a][m] = sum / n;
    }
  }
  for (std::size_t m = 0; m < kMeasures.size(); ++m) {
    report.average_comparisons[m] = compare_with_best(report.average, m);
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const Qrels qrels = load_qrels(config.qrels_path);
  const auto groups = load_groups(config);
  return run_experiment(groups, qrels, config.settings);
}

SweepTable training_size_sweep(std::span<const RunGroup> groups, const Qrels& qrels,
                               const ExperimentSettings& settings,
                               std::span<const double> fractions, Measure measure) {
  if (fractions.empty()) throw std::invalid_argument("training_size_sweep: no fractions");
  for (double f : fractions) {
    if (!(f > 0.0 && f < 1.0)) {
      throw std::invalid_argument("training_size_sweep: fractions must lie in (0, 1)");
    }
  }
  SweepTable table;
  table.fractions.assign(fractions.begin(), fractions.end());
  table.measure = measure;
  for (const auto& group : groups) table.rows.push_back({group.name, {}, {}});

  const std::size_t m = measure_index(measure);
  for (double fraction : fractions) {
    ExperimentSettings at = settings;
    at.training_fraction = fraction;
    const ExperimentReport report = run_experiment(groups, qrels, at);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (std::size_t a = 0; a < kAlgorithms.size(); ++a) {
        table.rows[g].values[a].push_back(report.groups[g].scores[a][m]);
      }
    }
  }
  for (auto& row : table.rows) {
    for (std::size_t a = 0; a < kAlgorithms.size(); ++a) {
      try {
        row.cv[a] = coefficient_of_variation(row.values[a]);
      } catch (const std::invalid_argument&) {
        row.cv[a] = std::numeric_limits<double>::quiet_NaN();
      }
    }
  }
  return table;
}

SweepTable training_size_sweep(const ExperimentConfig& config) {
  const Qrels qrels = load_qrels(config.qrels_path);
  const auto groups = load_groups(config);
  return training_size_sweep(groups, qrels, config.settings, config.sweep_fractions,
                             config.sweep_measure);
}

}  // namespace slidefuse
