#include "commands.hpp"

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slidefuse/corpus_io.hpp"
#include "slidefuse/experiments.hpp"
#include "slidefuse/metrics.hpp"
#include "slidefuse/profiles.hpp"

namespace slidefuse::cli {
namespace {

/// Raised for bad flag combinations detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FuseOptions {
  std::vector<std::string> runs;
  std::string qrels;
  std::string algorithm = "slidefuse";
  std::size_t w = kDefaultHalfwidth;
  std::size_t segments = kDefaultProbFuseSegments;
  double train_fraction = 0.10;
  std::uint64_t seed = 0;
  std::string tag;
  bool include_training = false;
};

struct EvaluateOptions {
  std::string run;
  std::string qrels;
  bool per_query = false;
};

struct ReportOptions {
  std::string config;
  std::string format = "text";
  std::string metric;
};

struct CurveOptions {
  std::vector<std::string> runs;
  std::string qrels;
  std::optional<std::size_t> w;
  std::optional<double> train_fraction;
  std::uint64_t seed = 0;
};

std::vector<SystemRun> load_runs(const std::vector<std::string>& paths) {
  std::vector<SystemRun> runs;
  runs.reserve(paths.size());
  for (const auto& path : paths) runs.push_back(load_run_file(path));
  return runs;
}

int cmd_fuse(const FuseOptions& opts, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  Algorithm algorithm;
  try {
    algorithm = parse_algorithm(opts.algorithm);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(e.what()) + " (expected slidefuse, combmnz, probfuse or segfuse)");
  }
  const bool trained = needs_training(algorithm);
  if (!trained) {
    for (const char* flag : {"--qrels", "--w", "--segments", "--train-fraction", "--seed",
                             "--include-training"}) {
      if (sub.count(flag) > 0) err << "warning: " << flag << " is ignored by combmnz\n";
    }
  } else if (opts.qrels.empty()) {
    throw UsageError(opts.algorithm + " needs --qrels for its training phase");
  }

  const auto runs = load_runs(opts.runs);
  const auto universe = query_universe(runs);
  const FusionParams params{opts.w, opts.segments};
  FusedRun fused;
  if (!trained) {
    fused = fuse_queries(algorithm, runs, {}, universe, Qrels{}, params);
  } else {
    const Qrels qrels = load_qrels(opts.qrels);
    const QuerySplit split = split_queries(universe, opts.train_fraction, opts.seed, 0);
    const QuerySet training(split.training.begin(), split.training.end());
    err << "training on " << split.training.size() << " of " << universe.size() << " queries\n";
    fused = fuse_queries(algorithm, runs, training, opts.include_training ? universe : split.test,
                         qrels, params);
  }
  write_run_file(out, fused, opts.tag.empty() ? opts.algorithm : opts.tag);
  return kSuccess;
}

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out) {
  const SystemRun run = load_run_file(opts.run);
  const Qrels qrels = load_qrels(opts.qrels);
  const RunEvaluation eval = evaluate_run(run, qrels);
  char buf[160];
  out << "query\tMAP\tbpref\tP10\n";
  if (opts.per_query) {
    for (const auto& [qid, ap] : eval.map.per_query) {
      std::snprintf(buf, sizeof buf, "\t%.4f\t%.4f\t%.4f\n", ap, eval.bpref.per_query.at(qid),
                    eval.p10.per_query.at(qid));
      out << qid << buf;
    }
  }
  std::snprintf(buf, sizeof buf, "all\t%.4f\t%.4f\t%.4f\n", eval.map.mean, eval.bpref.mean,
                eval.p10.mean);
  out << buf;
  return kSuccess;
}

void check_format(const std::string& format) {
  if (format != "text" && format != "tsv") {
    throw UsageError("unknown --format '" + format + "' (expected text or tsv)");
  }
}

int cmd_experiment(const ReportOptions& opts, std::ostream& out) {
  check_format(opts.format);
  const ExperimentConfig config = load_config(opts.config);
  const ExperimentReport report = run_experiment(config);
  if (opts.format == "tsv") {
    write_report_tsv(out, report);
  } else {
    write_report_text(out, report);
  }
  return kSuccess;
}

int cmd_sweep(const ReportOptions& opts, std::ostream& out) {
  check_format(opts.format);
  ExperimentConfig config = load_config(opts.config);
  if (!opts.metric.empty()) {
    try {
      config.sweep_measure = parse_measure(opts.metric);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const SweepTable table = training_size_sweep(config);
  if (opts.format == "tsv") {
    write_sweep_tsv(out, table);
  } else {
    write_sweep_text(out, table);
  }
  return kSuccess;
}

int cmd_curve(const CurveOptions& opts, std::ostream& out) {
  const auto runs = load_runs(opts.runs);
  const Qrels qrels = load_qrels(opts.qrels);
  const auto universe = query_universe(runs);
  QuerySet training(universe.begin(), universe.end());
  if (opts.train_fraction) {
    const QuerySplit split = split_queries(universe, *opts.train_fraction, opts.seed, 0);
    training = QuerySet(split.training.begin(), split.training.end());
  }
  if (training.empty()) throw std::invalid_argument("no queries to build a profile from");
  bool first = true;
  for (const auto& run : runs) {
    if (!first) out << '\n';
    first = false;
    out << "# system " << run.system_tag << (opts.w ? " window w=" + std::to_string(*opts.w) : " raw")
        << '\n';
    write_curve(out, emit_probability_curve(build_profile(run, training, qrels), opts.w));
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank fusion with sliding-window probabilities, plus CombMNZ, ProbFuse and SegFuse "
               "baselines and a TREC evaluation harness",
               "slidefuse"};
  app.require_subcommand(1, 1);

  FuseOptions fuse_opts;
  auto* fuse = app.add_subcommand("fuse", "Fuse TREC run files and write a fused run to stdout");
  fuse->add_option("runs", fuse_opts.runs, "Input run files (one per system)")->required();
  fuse->add_option("--algorithm,-a", fuse_opts.algorithm,
                   "slidefuse, combmnz, probfuse or segfuse")
      ->capture_default_str();
  fuse->add_option("--qrels,-q", fuse_opts.qrels, "Relevance judgments for training");
  fuse->add_option("--w", fuse_opts.w, "Window half-width (slidefuse)")->capture_default_str();
  fuse->add_option("--segments", fuse_opts.segments, "Segment count (probfuse)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fuse->add_option("--train-fraction", fuse_opts.train_fraction, "Fraction of queries used for training")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  fuse->add_option("--seed", fuse_opts.seed, "Shuffle seed")->capture_default_str();
  fuse->add_option("--tag", fuse_opts.tag, "Run tag to write (default: algorithm name)");
  fuse->add_flag("--include-training", fuse_opts.include_training,
                 "Also emit fused lists for the training queries");

  EvaluateOptions eval_opts;
  auto* evaluate = app.add_subcommand("evaluate", "Score a run with MAP, bpref and P10");
  evaluate->add_option("run", eval_opts.run, "Run file")->required();
  evaluate->add_option("--qrels,-q", eval_opts.qrels, "Relevance judgments")->required();
  evaluate->add_flag("--per-query", eval_opts.per_query, "Print one row per evaluated query");

  ReportOptions exp_opts;
  auto* experiment = app.add_subcommand("experiment", "Run the multi-shuffle fusion experiment");
  experiment->add_option("config", exp_opts.config, "Experiment config (JSON)")->required();
  experiment->add_option("--format", exp_opts.format, "text or tsv")->capture_default_str();

  ReportOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Coefficient of variation across training sizes");
  sweep->add_option("config", sweep_opts.config, "Experiment config (JSON)")->required();
  sweep->add_option("--format", sweep_opts.format, "text or tsv")->capture_default_str();
  sweep->add_option("--metric", sweep_opts.metric, "map, bpref or p10 (overrides config)");

  CurveOptions curve_opts;
  auto* curve = app.add_subcommand("curve", "Emit per-position relevance probability curves");
  curve->add_option("runs", curve_opts.runs, "Input run files")->required();
  curve->add_option("--qrels,-q", curve_opts.qrels, "Relevance judgments")->required();
  curve->add_option("--w", curve_opts.w, "Emit window probabilities with this half-width");
  curve->add_option("--train-fraction", curve_opts.train_fraction,
                    "Build profiles from a shuffled training split instead of all queries")
      ->check(CLI::Range(0.0, 1.0));
  curve->add_option("--seed", curve_opts.seed, "Shuffle seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*fuse) return cmd_fuse(fuse_opts, *fuse, out, err);
    if (*evaluate) return cmd_evaluate(eval_opts, out);
    if (*experiment) return cmd_experiment(exp_opts, out);
    if (*sweep) return cmd_sweep(sweep_opts, out);
    if (*curve) return cmd_curve(curve_opts, out);
  } catch (const UsageError& e) {
    err << "slidefuse: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "slidefuse: " << e.what() << '\n';
    err << "offending keys:";
    for (const auto& key : e.keys()) err << ' ' << key;
    err << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "slidefuse: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace slidefuse::cli
