#include "slidefuse/slidefuse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace slidefuse {

Window window_bounds(Position p, std::size_t halfwidth, std::size_t list_length) {
  if (p >= list_length) {
    throw std::out_of_range("window_bounds: position " + std::to_string(p) +
                            " outside list of length " + std::to_string(list_length));
  }
  Window window;
  window.first = p >= halfwidth ? p - halfwidth : 0;
  // p + halfwidth may overflow for huge halfwidths; compare via subtraction.
  window.last = halfwidth < list_length - p ? p + halfwidth : list_length - 1;
  return window;
}

double window_probability(const RelevanceProfile& profile, Position p, std::size_t halfwidth,
                          std::size_t list_length) {
  const Window window = window_bounds(p, halfwidth, list_length);
  double sum = 0.0;
  for (Position i = window.first; i <= window.last; ++i) sum += raw_probability(profile, i);
  return sum / static_cast<double>(window.size());
}

void FusionEnsemble::add(const SystemRun& run, RelevanceProfile profile) {
  if (profile.system_tag != run.system_tag) {
    throw std::invalid_argument("FusionEnsemble: profile for '" + profile.system_tag +
                                "' paired with run '" + run.system_tag + "'");
  }
  for (const auto& m : members_) {
    if (m.run->system_tag == run.system_tag) {
      throw std::invalid_argument("FusionEnsemble: duplicate system tag '" + run.system_tag + "'");
    }
  }
  members_.push_back({&run, std::move(profile)});
}

FusedList fuse(const FusionEnsemble& ensemble, std::string_view query_id, std::size_t halfwidth) {
  std::map<DocId, double> scores;
  for (const auto& member : ensemble.members()) {
    const ResultList* list = member.run->find(query_id);
    if (list == nullptr) continue;
    const std::size_t n = list->size();
    for (const auto& entry : list->entries) {
      scores[entry.doc_id] += window_probability(member.profile, entry.rank, halfwidth, n);
    }
  }
  return make_fused_list(QueryId(query_id), std::move(scores));
}

}  // namespace slidefuse
