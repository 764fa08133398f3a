#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "slidefuse/types.hpp"

namespace slidefuse {

/// Thrown when a measure is requested for a query with no judged-relevant
/// documents, or a run has no evaluable query at all.
class NotEvaluable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Average precision. Unjudged documents count as nonrelevant; relevant
/// documents never retrieved contribute zero precision.
double average_precision(std::span<const DocId> ranking, const Qrels& qrels,
                         std::string_view query_id);

/// bpref as computed by trec_eval: unjudged documents are skipped, the count
/// of judged-nonrelevant documents above each relevant one is capped at
/// min(R, NN), and NN = 0 lets every retrieved relevant document score 1.
double bpref(std::span<const DocId> ranking, const Qrels& qrels, std::string_view query_id);

/// Precision over the first 10 positions; missing positions are nonrelevant.
double precision_at_10(std::span<const DocId> ranking, const Qrels& qrels,
                       std::string_view query_id);

enum class Measure { map, bpref, p10 };

std::string_view measure_name(Measure measure);
/// Accepts "map", "bpref", "p10" (case-insensitive).
Measure parse_measure(std::string_view name);

struct MetricScores {
  std::map<QueryId, double> per_query;
  double mean = 0.0;
};

struct RunEvaluation {
  MetricScores map;
  MetricScores bpref;
  MetricScores p10;

  const MetricScores& operator[](Measure measure) const;
};

using RankedRun = std::map<QueryId, std::vector<DocId>>;

/// Evaluates every query of `run` that has at least one judged-relevant
/// document. Throws NotEvaluable when none qualifies.
RunEvaluation evaluate_run(const RankedRun& run, const Qrels& qrels);
RunEvaluation evaluate_run(const FusedRun& run, const Qrels& qrels);
RunEvaluation evaluate_run(const SystemRun& run, const Qrels& qrels);

}  // namespace slidefuse
