#include "slidefuse/metrics.hpp"

#include <algorithm>
#include <cctype>

namespace slidefuse {
namespace {

std::size_t require_relevant(const Qrels& qrels, std::string_view query_id, const char* measure) {
  const std::size_t relevant = qrels.relevant_count(query_id);
  if (relevant == 0) {
    throw NotEvaluable(std::string(measure) + ": query '" + std::string(query_id) +
                       "' has no judged-relevant documents");
  }
  return relevant;
}

}  // namespace

double average_precision(std::span<const DocId> ranking, const Qrels& qrels,
                         std::string_view query_id) {
  const std::size_t relevant_total = require_relevant(qrels, query_id, "average_precision");
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (!qrels.is_relevant(query_id, ranking[i])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(relevant_total);
}

double bpref(std::span<const DocId> ranking, const Qrels& qrels, std::string_view query_id) {
  const std::size_t relevant_total = require_relevant(qrels, query_id, "bpref");
  const std::size_t cap = std::min(relevant_total, qrels.nonrelevant_count(query_id));
  double sum = 0.0;
  std::size_t nonrelevant_above = 0;
  for (const auto& doc : ranking) {
    switch (qrels.judgment(query_id, doc)) {
      case Judgment::unjudged:
        break;
      case Judgment::nonrelevant:
        ++nonrelevant_above;
        break;
      case Judgment::relevant:
        if (cap == 0) {
          sum += 1.0;
        } else {
          sum += 1.0 - static_cast<double>(std::min(nonrelevant_above, cap)) /
                           static_cast<double>(cap);
        }
        break;
    }
  }
  return sum / static_cast<double>(relevant_total);
}

double precision_at_10(std::span<const DocId> ranking, const Qrels& qrels,
                       std::string_view query_id) {
  constexpr std::size_t kDepth = 10;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(kDepth, ranking.size()); ++i) {
    if (qrels.is_relevant(query_id, ranking[i])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(kDepth);
}

std::string_view measure_name(Measure measure) {
  switch (measure) {
    case Measure::map: return "MAP";
    case Measure::bpref: return "bpref";
    case Measure::p10: return "P10";
  }
  return "?";
}

Measure parse_measure(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "map") return Measure::map;
  if (lower == "bpref") return Measure::bpref;
  if (lower == "p10") return Measure::p10;
  throw std::invalid_argument("unknown measure '" + std::string(name) + "'");
}

const MetricScores& RunEvaluation::operator[](Measure measure) const {
  switch (measure) {
    case Measure::map: return map;
    case Measure::bpref: return bpref;
    case Measure::p10: return p10;
  }
  throw std::invalid_argument("unknown measure");
}

RunEvaluation evaluate_run(const RankedRun& run, const Qrels& qrels) {
  RunEvaluation eval;
  for (const auto& [qid, ranking] : run) {
    if (qrels.relevant_count(qid) == 0) continue;
    eval.map.per_query[qid] = average_precision(ranking, qrels, qid);
    eval.bpref.per_query[qid] = bpref(ranking, qrels, qid);
    eval.p10.per_query[qid] = precision_at_10(ranking, qrels, qid);
  }
  if (eval.map.per_query.empty()) throw NotEvaluable("evaluate_run: no evaluable query");
  for (MetricScores* scores : {&eval.map, &eval.bpref, &eval.p10}) {
    double sum = 0.0;
    for (const auto& [qid, value] : scores->per_query) sum += value;
    scores->mean = sum / static_cast<double>(scores->per_query.size());
  }
  return eval;
}

RunEvaluation evaluate_run(const FusedRun& run, const Qrels& qrels) {
  RankedRun ranked;
  for (const auto& [qid, list] : run) ranked.emplace(qid, ranking_of(list));
  return evaluate_run(ranked, qrels);
}

RunEvaluation evaluate_run(const SystemRun& run, const Qrels& qrels) {
  RankedRun ranked;
  for (const auto& [qid, list] : run.lists) ranked.emplace(qid, ranking_of(list));
  return evaluate_run(ranked, qrels);
}

}  // namespace slidefuse
