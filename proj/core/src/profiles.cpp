#include "slidefuse/profiles.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "slidefuse/slidefuse.hpp"

namespace slidefuse {

std::optional<Position> RelevanceProfile::max_position() const noexcept {
  if (support.empty()) return std::nullopt;
  return support.size() - 1;
}

RelevanceProfile build_profile(const SystemRun& run, const QuerySet& training_queries,
                               const Qrels& qrels) {
  if (training_queries.empty()) {
    throw std::invalid_argument("build_profile: training query set is empty");
  }
  RelevanceProfile profile;
  profile.system_tag = run.system_tag;
  for (const auto& qid : training_queries) {
    const ResultList* list = run.find(qid);
    if (list == nullptr) continue;
    if (list->size() > profile.support.size()) {
      profile.support.resize(list->size(), 0);
      profile.relevant_counts.resize(list->size(), 0);
    }
    for (const auto& entry : list->entries) {
      ++profile.support[entry.rank];
      if (qrels.is_relevant(qid, entry.doc_id)) ++profile.relevant_counts[entry.rank];
    }
  }
  return profile;
}

double raw_probability(const RelevanceProfile& profile, Position p) noexcept {
  if (p >= profile.support.size() || profile.support[p] == 0) return 0.0;
  return static_cast<double>(profile.relevant_counts[p]) / static_cast<double>(profile.support[p]);
}

std::vector<CurvePoint> emit_probability_curve(const RelevanceProfile& profile,
                                               std::optional<std::size_t> halfwidth) {
  std::vector<CurvePoint> curve;
  const std::size_t n = profile.length();
  curve.reserve(n);
  for (Position p = 0; p < n; ++p) {
    double value = halfwidth ? window_probability(profile, p, *halfwidth, n)
                             : raw_probability(profile, p);
    curve.push_back({p, value});
  }
  return curve;
}

void write_curve(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "position\tprobability\n";
  char buf[64];
  for (const auto& point : curve) {
    std::snprintf(buf, sizeof buf, "%zu\t%.6f\n", point.position, point.probability);
    out << buf;
  }
}

}  // namespace slidefuse
