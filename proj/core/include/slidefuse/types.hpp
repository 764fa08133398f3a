#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slidefuse {

/// 0-based rank within a result list. File formats use 1-based ranks; the
/// conversion happens only in corpus_io.
using Position = std::size_t;

using QueryId = std::string;
using DocId = std::string;
using QuerySet = std::set<QueryId>;

/// Thrown when an input file cannot be parsed. `line()` is 1-based, 0 when
/// the failure is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

struct RankedEntry {
  DocId doc_id;
  Position rank = 0;
  double raw_score = 0.0;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// One system's answer to one query. Entries are contiguous in rank
/// (entries[i].rank == i) and duplicate-free in doc_id.
struct ResultList {
  QueryId query_id;
  std::vector<RankedEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }

  friend bool operator==(const ResultList&, const ResultList&) = default;
};

struct SystemRun {
  std::string system_tag;
  std::map<QueryId, ResultList> lists;

  /// nullptr when the system returned nothing for `query_id`.
  const ResultList* find(std::string_view query_id) const;
  std::vector<QueryId> query_ids() const;

  friend bool operator==(const SystemRun&, const SystemRun&) = default;
};

enum class Judgment { unjudged, nonrelevant, relevant };

/// Binary relevance judgments. Pairs that were never judged stay distinct
/// from pairs judged nonrelevant.
class Qrels {
 public:
  /// Returns false if the pair already carries a different judgment.
  bool add(const QueryId& query_id, const DocId& doc_id, bool relevant);

  Judgment judgment(std::string_view query_id, std::string_view doc_id) const;
  bool is_relevant(std::string_view query_id, std::string_view doc_id) const {
    return judgment(query_id, doc_id) == Judgment::relevant;
  }

  std::size_t relevant_count(std::string_view query_id) const;
  std::size_t nonrelevant_count(std::string_view query_id) const;

  /// Judged documents of one query in doc_id order, true for relevant.
  std::vector<std::pair<DocId, bool>> judged(std::string_view query_id) const;

  /// Total number of stored judgments.
  std::size_t size() const noexcept;
  std::vector<QueryId> query_ids() const;

 private:
  struct PerQuery {
    std::map<DocId, bool, std::less<>> docs;
    std::size_t relevant = 0;
  };
  std::map<QueryId, PerQuery, std::less<>> queries_;
};

struct FusedEntry {
  DocId doc_id;
  double score = 0.0;

  friend bool operator==(const FusedEntry&, const FusedEntry&) = default;
};

/// Final merged ranking for one query, sorted by descending score with
/// ascending doc_id breaking ties.
struct FusedList {
  QueryId query_id;
  std::vector<FusedEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
};

using FusedRun = std::map<QueryId, FusedList>;

/// Sorts into the canonical fused order.
void sort_fused(std::vector<FusedEntry>& entries);

/// Builds a canonical FusedList from accumulated per-document scores.
FusedList make_fused_list(QueryId query_id, std::map<DocId, double> scores);

/// Document ids in ranked order.
std::vector<DocId> ranking_of(const FusedList& list);
std::vector<DocId> ranking_of(const ResultList& list);

}  // namespace slidefuse
