#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slidefuse/types.hpp"

namespace slidefuse {

/// Per-position relevance evidence for one input system, gathered over a
/// set of training queries.
///
/// support[p] is the number of training queries whose list is longer than
/// p; relevant_counts[p] is how many of those had a relevant document at p.
/// Both vectors have length max_position() + 1, so support is strictly
/// positive everywhere it is stored and non-increasing in p.
struct RelevanceProfile {
  std::string system_tag;
  std::vector<std::size_t> relevant_counts;
  std::vector<std::size_t> support;

  /// Number of positions with nonzero support.
  std::size_t length() const noexcept { return support.size(); }
  /// Largest supported position; nullopt for a profile with no evidence.
  std::optional<Position> max_position() const noexcept;
};

/// Tallies per-position relevance over `training_queries`. Unjudged and
/// judged-nonrelevant documents both count as not relevant. A training query
/// the system never answered contributes to no position.
///
/// Throws std::invalid_argument if `training_queries` is empty.
RelevanceProfile build_profile(const SystemRun& run, const QuerySet& training_queries,
                               const Qrels& qrels);

/// relevant_counts[p] / support[p], or 0 where there is no support.
double raw_probability(const RelevanceProfile& profile, Position p) noexcept;

struct CurvePoint {
  Position position = 0;
  double probability = 0.0;
};

/// One row per position 0..max_position. Without a window the rows hold raw
/// probabilities; with one they hold window probabilities over a list whose
/// length is the profile's length.
std::vector<CurvePoint> emit_probability_curve(const RelevanceProfile& profile,
                                               std::optional<std::size_t> halfwidth);

/// Tab-separated `position<TAB>probability` with a header line, six decimals.
void write_curve(std::ostream& out, const std::vector<CurvePoint>& curve);

}  // namespace slidefuse
