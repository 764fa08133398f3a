#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "slidefuse/types.hpp"

namespace slidefuse {

/// Parses a TREC run file (`query_id Q0 doc_id rank score tag`).
///
/// The score column is authoritative: entries are re-sorted by descending
/// score, ties broken by the file's rank column and then by doc_id, and
/// assigned contiguous 0-based ranks. Blank lines and `#` comments are
/// skipped. `source` only labels error messages.
SystemRun parse_run_file(std::istream& in, std::string_view source = "<run>");

/// Parses a qrels file (`query_id iteration doc_id judgment`). A judgment
/// greater than zero is relevant, anything else nonrelevant.
Qrels parse_qrels(std::istream& in, std::string_view source = "<qrels>");

SystemRun load_run_file(const std::string& path);
Qrels load_qrels(const std::string& path);

/// Writes fused rankings as a TREC run with 1-based ranks, queries in
/// lexicographic order. Scores use the shortest round-tripping decimal form.
void write_run_file(std::ostream& out, const FusedRun& fused, std::string_view tag);

/// Writes a parsed run back out unchanged (raw scores, 1-based ranks).
void write_run_file(std::ostream& out, const SystemRun& run);

/// Writes qrels lines (`query_id 0 doc_id 0|1`) in query and doc_id order.
void write_qrels(std::ostream& out, const Qrels& qrels);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_score(double value);

}  // namespace slidefuse
