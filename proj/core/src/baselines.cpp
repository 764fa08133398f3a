#include "slidefuse/baselines.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace slidefuse {
namespace {

QueryId shared_query_id(std::span<const ResultList> lists, const char* caller) {
  const ResultList* first = nullptr;
  for (const auto& list : lists) {
    if (list.empty()) continue;
    if (first == nullptr) {
      first = &list;
    } else if (list.query_id != first->query_id) {
      throw std::invalid_argument(std::string(caller) + ": lists for different queries ('" +
                                  first->query_id + "' and '" + list.query_id + "')");
    }
  }
  if (first != nullptr) return first->query_id;
  return lists.empty() ? QueryId{} : lists.front().query_id;
}

void check_pairing(std::span<const ResultList> lists, std::span<const SegmentProfile> profiles,
                   const char* caller) {
  if (lists.size() != profiles.size()) {
    throw std::invalid_argument(std::string(caller) + ": " + std::to_string(lists.size()) +
                                " lists but " + std::to_string(profiles.size()) + " profiles");
  }
}

}  // namespace

ResultList normalize_scores(const ResultList& list) {
  if (list.empty()) throw std::invalid_argument("normalize_scores: empty result list");
  auto [lo, hi] = std::minmax_element(
      list.entries.begin(), list.entries.end(),
      [](const RankedEntry& a, const RankedEntry& b) { return a.raw_score < b.raw_score; });
  const double min = lo->raw_score;
  const double range = hi->raw_score - min;
  ResultList out = list;
  for (auto& e : out.entries) e.raw_score = range > 0.0 ? (e.raw_score - min) / range : 1.0;
  return out;
}

FusedList combmnz(std::span<const ResultList> lists) {
  QueryId qid = shared_query_id(lists, "combmnz");
  std::map<DocId, std::pair<double, std::size_t>> acc;
  for (const auto& list : lists) {
    if (list.empty()) continue;
    for (const auto& e : normalize_scores(list).entries) {
      auto& [sum, hits] = acc[e.doc_id];
      sum += e.raw_score;
      ++hits;
    }
  }
  std::map<DocId, double> scores;
  for (const auto& [doc, a] : acc) scores.emplace(doc, a.first * static_cast<double>(a.second));
  return make_fused_list(std::move(qid), std::move(scores));
}

std::size_t exponential_segment_size(std::size_t k) { return (std::size_t{10} << k) - 5; }

std::vector<Position> segment_starts(const SegmentScheme& scheme, std::size_t list_length) {
  std::vector<Position> starts;
  if (scheme.kind == SegmentScheme::Kind::equal) {
    const std::size_t len = scheme.count == 0 ? 0 : list_length / scheme.count;
    for (std::size_t k = 0; k < scheme.count; ++k) starts.push_back(k * len);
    return starts;
  }
  Position start = 0;
  for (std::size_t k = 0; start < list_length || k == 0; ++k) {
    starts.push_back(start);
    start += exponential_segment_size(k);
  }
  return starts;
}

std::size_t segment_index(const SegmentScheme& scheme, Position p, std::size_t list_length) {
  if (scheme.kind == SegmentScheme::Kind::equal) {
    if (scheme.count == 0) throw std::invalid_argument("segment_index: zero segments");
    const std::size_t len = list_length / scheme.count;
    if (len == 0) return scheme.count - 1;
    return std::min(p / len, scheme.count - 1);
  }
  std::size_t k = 0;
  Position end = exponential_segment_size(0);
  while (p >= end) end += exponential_segment_size(++k);
  return k;
}

SegmentProfile train_segment_profile(const SystemRun& run, const QuerySet& training_queries,
                                     const Qrels& qrels, const SegmentScheme& scheme) {
  if (training_queries.empty()) {
    throw std::invalid_argument("segment training: training query set is empty");
  }
  if (scheme.kind == SegmentScheme::Kind::equal && scheme.count == 0) {
    throw std::invalid_argument("segment training: segment count must be at least 1");
  }
  SegmentProfile profile{run.system_tag, scheme, {}};
  if (scheme.kind == SegmentScheme::Kind::equal) profile.seg_probability.assign(scheme.count, 0.0);

  for (const auto& qid : training_queries) {
    const ResultList* list = run.find(qid);
    if (list == nullptr || list->empty()) continue;
    const std::size_t n = list->size();
    const auto starts = segment_starts(scheme, n);
    if (profile.seg_probability.size() < starts.size()) {
      profile.seg_probability.resize(starts.size(), 0.0);
    }
    for (std::size_t k = 0; k < starts.size(); ++k) {
      const Position begin = starts[k];
      Position end = k + 1 < starts.size() ? starts[k + 1] : n;
      end = std::min(end, n);
      if (begin >= end) continue;
      std::size_t relevant = 0;
      for (Position p = begin; p < end; ++p) {
        if (qrels.is_relevant(qid, list->entries[p].doc_id)) ++relevant;
      }
      profile.seg_probability[k] += static_cast<double>(relevant) / static_cast<double>(end - begin);
    }
  }
  const double queries = static_cast<double>(training_queries.size());
  for (auto& p : profile.seg_probability) p /= queries;
  return profile;
}

SegmentProfile probfuse_train(const SystemRun& run, const QuerySet& training_queries,
                              const Qrels& qrels, std::size_t segments) {
  return train_segment_profile(run, training_queries, qrels, SegmentScheme::equal_segments(segments));
}

SegmentProfile segfuse_train(const SystemRun& run, const QuerySet& training_queries,
                             const Qrels& qrels) {
  return train_segment_profile(run, training_queries, qrels, SegmentScheme::exponential_segments());
}

FusedList probfuse_fuse(std::span<const ResultList> lists,
                        std::span<const SegmentProfile> profiles) {
  check_pairing(lists, profiles, "probfuse_fuse");
  QueryId qid = shared_query_id(lists, "probfuse_fuse");
  std::map<DocId, double> scores;
  for (std::size_t s = 0; s < lists.size(); ++s) {
    const auto& list = lists[s];
    const auto& profile = profiles[s];
    for (const auto& e : list.entries) {
      const std::size_t k = segment_index(profile.scheme, e.rank, list.size());
      scores[e.doc_id] += profile.probability(k) / static_cast<double>(k + 1);
    }
  }
  return make_fused_list(std::move(qid), std::move(scores));
}

FusedList segfuse_fuse(std::span<const ResultList> lists,
                       std::span<const SegmentProfile> profiles) {
  check_pairing(lists, profiles, "segfuse_fuse");
  QueryId qid = shared_query_id(lists, "segfuse_fuse");
  std::map<DocId, double> scores;
  for (std::size_t s = 0; s < lists.size(); ++s) {
    const auto& list = lists[s];
    if (list.empty()) continue;
    const auto& profile = profiles[s];
    const ResultList normalized = normalize_scores(list);
    for (const auto& e : normalized.entries) {
      const std::size_t k = segment_index(profile.scheme, e.rank, list.size());
      scores[e.doc_id] += profile.probability(k) * (1.0 + e.raw_score);
    }
  }
  return make_fused_list(std::move(qid), std::move(scores));
}

}  // namespace slidefuse
