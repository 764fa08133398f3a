#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "slidefuse/profiles.hpp"
#include "slidefuse/types.hpp"

namespace slidefuse {

/// Default number of positions on either side of the centre, w = 5.
inline constexpr std::size_t kDefaultHalfwidth = 5;

/// Inclusive window [first, last] around a position, clamped to the list.
struct Window {
  Position first = 0;
  Position last = 0;

  std::size_t size() const noexcept { return last - first + 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Window of `halfwidth` positions either side of `p` in a list of length
/// `list_length`, clamped to [0, list_length - 1].
///
/// Throws std::out_of_range unless 0 <= p < list_length.
Window window_bounds(Position p, std::size_t halfwidth, std::size_t list_length);

/// Mean of raw_probability over window_bounds(p, halfwidth, list_length),
/// dividing by the clamped window size. Accumulates left to right.
double window_probability(const RelevanceProfile& profile, Position p, std::size_t halfwidth,
                          std::size_t list_length);

/// The input systems to fuse: each run paired with the profile trained on it.
/// Runs are referenced, not copied, and must outlive the ensemble.
class FusionEnsemble {
 public:
  struct Member {
    const SystemRun* run;
    RelevanceProfile profile;
  };

  /// Throws std::invalid_argument if the profile belongs to another system
  /// or the tag is already present.
  void add(const SystemRun& run, RelevanceProfile profile);

  const std::vector<Member>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

 private:
  std::vector<Member> members_;
};

/// Sums, for every document any member returned for `query_id`, the window
/// probability at that document's position in each member's list (using the
/// list's own length). A member without the query contributes nothing; a
/// query no member answered yields an empty list.
FusedList fuse(const FusionEnsemble& ensemble, std::string_view query_id, std::size_t halfwidth);

}  // namespace slidefuse
