#include "slidefuse/types.hpp"

#include <algorithm>

namespace slidefuse {

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + what
                                  : source + ": " + what),
      source_(std::move(source)),
      line_(line) {}

const ResultList* SystemRun::find(std::string_view query_id) const {
  auto it = lists.find(std::string(query_id));
  return it == lists.end() ? nullptr : &it->second;
}

std::vector<QueryId> SystemRun::query_ids() const {
  std::vector<QueryId> ids;
  ids.reserve(lists.size());
  for (const auto& [qid, list] : lists) ids.push_back(qid);
  return ids;
}

bool Qrels::add(const QueryId& query_id, const DocId& doc_id, bool relevant) {
  auto& per_query = queries_[query_id];
  auto [it, inserted] = per_query.docs.emplace(doc_id, relevant);
  if (!inserted) return it->second == relevant;
  if (relevant) ++per_query.relevant;
  return true;
}

Judgment Qrels::judgment(std::string_view query_id, std::string_view doc_id) const {
  auto q = queries_.find(query_id);
  if (q == queries_.end()) return Judgment::unjudged;
  auto d = q->second.docs.find(doc_id);
  if (d == q->second.docs.end()) return Judgment::unjudged;
  return d->second ? Judgment::relevant : Judgment::nonrelevant;
}

std::size_t Qrels::relevant_count(std::string_view query_id) const {
  auto q = queries_.find(query_id);
  return q == queries_.end() ? 0 : q->second.relevant;
}

std::size_t Qrels::nonrelevant_count(std::string_view query_id) const {
  auto q = queries_.find(query_id);
  return q == queries_.end() ? 0 : q->second.docs.size() - q->second.relevant;
}

std::vector<std::pair<DocId, bool>> Qrels::judged(std::string_view query_id) const {
  std::vector<std::pair<DocId, bool>> out;
  auto q = queries_.find(query_id);
  if (q == queries_.end()) return out;
  out.assign(q->second.docs.begin(), q->second.docs.end());
  return out;
}

std::size_t Qrels::size() const noexcept {
  std::size_t total = 0;
  for (const auto& [qid, per_query] : queries_) total += per_query.docs.size();
  return total;
}

std::vector<QueryId> Qrels::query_ids() const {
  std::vector<QueryId> ids;
  for (const auto& [qid, per_query] : queries_) ids.push_back(qid);
  return ids;
}

void sort_fused(std::vector<FusedEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const FusedEntry& a, const FusedEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
}

FusedList make_fused_list(QueryId query_id, std::map<DocId, double> scores) {
  FusedList fused{std::move(query_id), {}};
  fused.entries.reserve(scores.size());
  for (auto& [doc, score] : scores) fused.entries.push_back({doc, score});
  sort_fused(fused.entries);
  return fused;
}

std::vector<DocId> ranking_of(const FusedList& list) {
  std::vector<DocId> docs;
  docs.reserve(list.size());
  for (const auto& e : list.entries) docs.push_back(e.doc_id);
  return docs;
}

std::vector<DocId> ranking_of(const ResultList& list) {
  std::vector<DocId> docs;
  docs.reserve(list.size());
  for (const auto& e : list.entries) docs.push_back(e.doc_id);
  return docs;
}

}  // namespace slidefuse
