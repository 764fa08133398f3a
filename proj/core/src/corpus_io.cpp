#include "slidefuse/corpus_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

namespace slidefuse {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool skippable(const std::vector<std::string_view>& fields) {
  return fields.empty() || fields.front().front() == '#';
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_score(std::string_view text, double& out) {
  return parse_number(text, out) && std::isfinite(out);
}

struct PendingEntry {
  DocId doc_id;
  long long file_rank;
  double score;
};

}  // namespace

SystemRun parse_run_file(std::istream& in, std::string_view source_view) {
  const std::string source(source_view);
  SystemRun run;
  std::map<QueryId, std::vector<PendingEntry>> pending;
  std::map<QueryId, std::unordered_set<DocId>> seen;
  bool have_tag = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (skippable(fields)) continue;
    if (fields.size() != 6) {
      throw ParseError(source, line_no,
                       "expected 6 fields (query_id Q0 doc_id rank score tag), got " +
                           std::to_string(fields.size()));
    }
    long long file_rank = 0;
    if (!parse_number(fields[3], file_rank)) {
      throw ParseError(source, line_no, "non-integer rank '" + std::string(fields[3]) + "'");
    }
    double score = 0.0;
    if (!parse_score(fields[4], score)) {
      throw ParseError(source, line_no, "non-numeric score '" + std::string(fields[4]) + "'");
    }
    QueryId qid(fields[0]);
    DocId doc(fields[2]);
    if (!seen[qid].insert(doc).second) {
      throw ParseError(source, line_no, "duplicate document '" + doc + "' for query '" + qid + "'");
    }
    if (!have_tag) {
      run.system_tag = std::string(fields[5]);
      have_tag = true;
    }
    pending[qid].push_back({std::move(doc), file_rank, score});
  }
  if (in.bad()) throw ParseError(source, 0, "read failure");

  for (auto& [qid, entries] : pending) {
    std::sort(entries.begin(), entries.end(), [](const PendingEntry& a, const PendingEntry& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.file_rank != b.file_rank) return a.file_rank < b.file_rank;
      return a.doc_id < b.doc_id;
    });
    ResultList list{qid, {}};
    list.entries.reserve(entries.size());
    for (auto& e : entries) {
      list.entries.push_back({std::move(e.doc_id), list.entries.size(), e.score});
    }
    run.lists.emplace(qid, std::move(list));
  }
  return run;
}

Qrels parse_qrels(std::istream& in, std::string_view source_view) {
  const std::string source(source_view);
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (skippable(fields)) continue;
    if (fields.size() != 4) {
      throw ParseError(source, line_no,
                       "expected 4 fields (query_id iteration doc_id judgment), got " +
                           std::to_string(fields.size()));
    }
    long long judgment = 0;
    if (!parse_number(fields[3], judgment)) {
      throw ParseError(source, line_no, "non-integer judgment '" + std::string(fields[3]) + "'");
    }
    if (!qrels.add(std::string(fields[0]), std::string(fields[2]), judgment > 0)) {
      throw ParseError(source, line_no,
                       "conflicting judgment for query '" + std::string(fields[0]) +
                           "' document '" + std::string(fields[2]) + "'");
    }
  }
  if (in.bad()) throw ParseError(source, 0, "read failure");
  return qrels;
}

SystemRun load_run_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_run_file(in, path);
}

Qrels load_qrels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_qrels(in, path);
}

std::string format_score(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_run_file(std::ostream& out, const FusedRun& fused, std::string_view tag) {
  for (const auto& [qid, list] : fused) {
    std::vector<FusedEntry> entries = list.entries;
    sort_fused(entries);
    std::size_t rank = 1;
    for (const auto& e : entries) {
      out << qid << " Q0 " << e.doc_id << ' ' << rank++ << ' ' << format_score(e.score) << ' '
          << tag << '\n';
    }
  }
}

void write_run_file(std::ostream& out, const SystemRun& run) {
  for (const auto& [qid, list] : run.lists) {
    for (const auto& e : list.entries) {
      out << qid << " Q0 " << e.doc_id << ' ' << (e.rank + 1) << ' ' << format_score(e.raw_score)
          << ' ' << run.system_tag << '\n';
    }
  }
}

void write_qrels(std::ostream& out, const Qrels& qrels) {
  for (const auto& qid : qrels.query_ids()) {
    for (const auto& [doc, relevant] : qrels.judged(qid)) {
      out << qid << " 0 " << doc << ' ' << (relevant ? 1 : 0) << '\n';
    }
  }
}

}  // namespace slidefuse
