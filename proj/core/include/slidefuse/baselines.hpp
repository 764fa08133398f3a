#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "slidefuse/types.hpp"

namespace slidefuse {

/// Min-max rescale of raw scores into [0, 1]. A list whose scores are all
/// equal maps every score to 1.0. Throws std::invalid_argument on an empty
/// list.
ResultList normalize_scores(const ResultList& list);

/// CombMNZ: sum of normalised scores times the number of lists containing
/// the document. Empty lists are skipped. All non-empty lists must share a
/// query id (std::invalid_argument otherwise).
FusedList combmnz(std::span<const ResultList> lists);

/// How a result list is cut into segments.
///
/// `equal` splits each list into `count` segments of length N / count with
/// the remainder going to the last segment. `exponential` uses fixed
/// segment sizes 10 * 2^(k-1) - 5 (5, 15, 35, 75, ...) independent of N.
struct SegmentScheme {
  enum class Kind { equal, exponential };
  Kind kind = Kind::equal;
  std::size_t count = 25;

  static SegmentScheme equal_segments(std::size_t count) { return {Kind::equal, count}; }
  static SegmentScheme exponential_segments() { return {Kind::exponential, 0}; }
};

inline constexpr std::size_t kDefaultProbFuseSegments = 25;

/// Start positions of the segments covering a list of `list_length`.
/// Equal schemes always yield `count` starts (some segments may be empty
/// when the list is shorter than `count`).
std::vector<Position> segment_starts(const SegmentScheme& scheme, std::size_t list_length);

/// 0-based segment index holding position `p` in a list of `list_length`.
std::size_t segment_index(const SegmentScheme& scheme, Position p, std::size_t list_length);

/// Size of the k-th (0-based) exponential segment.
std::size_t exponential_segment_size(std::size_t k);

/// Per-segment relevance probabilities for one system.
struct SegmentProfile {
  std::string system_tag;
  SegmentScheme scheme;
  std::vector<double> seg_probability;

  double probability(std::size_t segment) const noexcept {
    return segment < seg_probability.size() ? seg_probability[segment] : 0.0;
  }
};

/// Trains a segment profile: for each segment, the fraction of relevant
/// documents it held in each training query, averaged over all training
/// queries. Queries the system did not answer count as contributing zero.
/// Empty segments contribute zero. Throws std::invalid_argument on an empty
/// training set or an equal scheme with zero segments.
SegmentProfile train_segment_profile(const SystemRun& run, const QuerySet& training_queries,
                                     const Qrels& qrels, const SegmentScheme& scheme);

/// ProbFuse training with `segments` equal-length segments.
SegmentProfile probfuse_train(const SystemRun& run, const QuerySet& training_queries,
                              const Qrels& qrels, std::size_t segments);

/// ProbFuse fusion: sum over systems of P(segment) / (1-based segment index).
/// lists[i] is system i's answer (possibly empty) and pairs with profiles[i].
FusedList probfuse_fuse(std::span<const ResultList> lists,
                        std::span<const SegmentProfile> profiles);

/// SegFuse training over exponentially growing segments.
SegmentProfile segfuse_train(const SystemRun& run, const QuerySet& training_queries,
                             const Qrels& qrels);

/// SegFuse fusion: sum over systems of P(segment) * (1 + normalised score).
FusedList segfuse_fuse(std::span<const ResultList> lists,
                       std::span<const SegmentProfile> profiles);

}  // namespace slidefuse
