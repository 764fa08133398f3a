// Shared fixtures and independent oracles for the unit and acceptance suites.
// Nothing here calls into the code paths it is used to check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "slidefuse/profiles.hpp"
#include "slidefuse/types.hpp"

namespace slidefuse::testing {

/// Result list with strictly descending scores N, N-1, ..., 1.
inline ResultList make_list(const QueryId& qid, const std::vector<DocId>& docs) {
  ResultList list{qid, {}};
  for (std::size_t i = 0; i < docs.size(); ++i) {
    list.entries.push_back({docs[i], i, static_cast<double>(docs.size() - i)});
  }
  return list;
}

inline ResultList make_scored_list(const QueryId& qid,
                                   const std::vector<std::pair<DocId, double>>& docs) {
  ResultList list{qid, {}};
  for (std::size_t i = 0; i < docs.size(); ++i) {
    list.entries.push_back({docs[i].first, i, docs[i].second});
  }
  return list;
}

inline SystemRun make_run(const std::string& tag,
                          const std::vector<std::pair<QueryId, std::vector<DocId>>>& lists) {
  SystemRun run{tag, {}};
  for (const auto& [qid, docs] : lists) run.lists.emplace(qid, make_list(qid, docs));
  return run;
}

inline Qrels make_qrels(const std::vector<std::tuple<QueryId, DocId, bool>>& judgments) {
  Qrels qrels;
  for (const auto& [qid, doc, relevant] : judgments) qrels.add(qid, doc, relevant);
  return qrels;
}

inline RelevanceProfile make_profile(const std::string& tag, std::vector<std::size_t> counts,
                                     std::vector<std::size_t> support) {
  return RelevanceProfile{tag, std::move(counts), std::move(support)};
}

/// Profile whose raw probabilities are counts[p] / denominator.
inline RelevanceProfile profile_from_counts(const std::string& tag,
                                            const std::vector<std::size_t>& counts,
                                            std::size_t denominator) {
  return make_profile(tag, counts, std::vector<std::size_t>(counts.size(), denominator));
}

/// Random profile of `length` positions with a non-increasing support.
inline RelevanceProfile random_profile(std::mt19937_64& rng, std::size_t length,
                                       const std::string& tag = "rand") {
  RelevanceProfile profile{tag, {}, {}};
  std::size_t support = 50 + rng() % 50;
  for (std::size_t p = 0; p < length; ++p) {
    if (support > 1 && rng() % 7 == 0) --support;
    profile.support.push_back(support);
    profile.relevant_counts.push_back(rng() % (support + 1));
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Window oracle: scans every offset in [-w, w] and keeps those that land in
// the list, instead of clamping the bounds first.

inline std::vector<double> raw_values(const RelevanceProfile& profile, std::size_t n) {
  std::vector<double> raw(n, 0.0);
  for (std::size_t p = 0; p < n && p < profile.support.size(); ++p) {
    if (profile.support[p] > 0) {
      raw[p] = static_cast<double>(profile.relevant_counts[p]) /
               static_cast<double>(profile.support[p]);
    }
  }
  return raw;
}

inline double brute_force_window_mean(const std::vector<double>& raw, std::size_t p,
                                      std::size_t w) {
  double sum = 0.0;
  std::size_t count = 0;
  const auto centre = static_cast<long long>(p);
  const auto width = static_cast<long long>(w);
  const auto n = static_cast<long long>(raw.size());
  for (long long offset = -width; offset <= width; ++offset) {
    const long long i = centre + offset;
    if (i < 0 || i >= n) continue;
    sum += raw[static_cast<std::size_t>(i)];
    ++count;
  }
  return sum / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Metric oracles written from the textbook definitions.

inline bool rel(const Qrels& q, const QueryId& qid, const DocId& d) {
  return q.judgment(qid, d) == Judgment::relevant;
}

/// AP as the mean, over all relevant documents, of precision at the cutoff
/// where each is found (prefix recount per cutoff).
inline double reference_ap(const std::vector<DocId>& ranking, const Qrels& q, const QueryId& qid) {
  double total = 0.0;
  for (std::size_t k = 1; k <= ranking.size(); ++k) {
    if (!rel(q, qid, ranking[k - 1])) continue;
    std::size_t hits = 0;
    for (std::size_t j = 0; j < k; ++j) hits += rel(q, qid, ranking[j]) ? 1 : 0;
    total += static_cast<double>(hits) / static_cast<double>(k);
  }
  return total / static_cast<double>(q.relevant_count(qid));
}

/// bpref by explicit pairwise comparison against every judged nonrelevant
/// document retrieved above each relevant one.
inline double reference_bpref(const std::vector<DocId>& ranking, const Qrels& q,
                              const QueryId& qid) {
  const double r = static_cast<double>(q.relevant_count(qid));
  const double nn = static_cast<double>(q.nonrelevant_count(qid));
  const double denom = std::min(r, nn);
  double total = 0.0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (!rel(q, qid, ranking[i])) continue;
    double above = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      if (q.judgment(qid, ranking[j]) == Judgment::nonrelevant) above += 1.0;
    }
    total += denom == 0.0 ? 1.0 : 1.0 - std::min(above, denom) / denom;
  }
  return total / r;
}

inline double reference_p10(const std::vector<DocId>& ranking, const Qrels& q,
                            const QueryId& qid) {
  double hits = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    if (i < ranking.size() && rel(q, qid, ranking[i])) hits += 1.0;
  }
  return hits / 10.0;
}

// ---------------------------------------------------------------------------
// Five-query metric fixture with hand-computed values. Document names encode
// their judgment: r = relevant, n = judged nonrelevant, u = unjudged.
//
//   Q1  r n r n            R=2 NN=2  AP (1/1+2/3)/2 = 5/6       bpref 0.75   P10 0.2
//   Q2  r u u r n u r n u u R=4 NN=2  AP (1+2/4+3/7)/4 = 27/56  bpref 0.625  P10 0.3
//   Q3  n n n              R=1 NN=3  AP 0                      bpref 0      P10 0
//   Q4  u r                R=1 NN=0  AP 1/2                    bpref 1      P10 0.1
//   Q5  n r n n r r        R=3 NN=5  AP (1/2+2/5+3/6)/3 = 7/15  bpref 2/9    P10 0.3
//   Q6  n                  R=0       excluded from every mean

struct MetricFixture {
  std::map<QueryId, std::vector<DocId>> run;
  Qrels qrels;
};

inline MetricFixture metric_fixture() {
  MetricFixture f;
  f.run["Q1"] = {"q1r1", "q1n1", "q1r2", "q1n2"};
  f.qrels.add("Q1", "q1r1", true);
  f.qrels.add("Q1", "q1r2", true);
  f.qrels.add("Q1", "q1n1", false);
  f.qrels.add("Q1", "q1n2", false);

  f.run["Q2"] = {"q2r1", "q2u1", "q2u2", "q2r2", "q2n1", "q2u3", "q2r3", "q2n2", "q2u4", "q2u5"};
  for (const char* d : {"q2r1", "q2r2", "q2r3", "q2r4"}) f.qrels.add("Q2", d, true);
  for (const char* d : {"q2n1", "q2n2"}) f.qrels.add("Q2", d, false);

  f.run["Q3"] = {"q3n1", "q3n2", "q3n3"};
  f.qrels.add("Q3", "q3r1", true);
  for (const char* d : {"q3n1", "q3n2", "q3n3"}) f.qrels.add("Q3", d, false);

  f.run["Q4"] = {"q4u1", "q4r1"};
  f.qrels.add("Q4", "q4r1", true);

  f.run["Q5"] = {"q5n1", "q5r1", "q5n2", "q5n3", "q5r2", "q5r3"};
  for (const char* d : {"q5r1", "q5r2", "q5r3"}) f.qrels.add("Q5", d, true);
  for (const char* d : {"q5n1", "q5n2", "q5n3", "q5n4", "q5n5"}) f.qrels.add("Q5", d, false);

  f.run["Q6"] = {"q6n1"};
  f.qrels.add("Q6", "q6n1", false);
  return f;
}

struct ExpectedMetrics {
  double ap, bpref, p10;
};

inline const std::map<QueryId, ExpectedMetrics>& metric_fixture_expected() {
  static const std::map<QueryId, ExpectedMetrics> expected = {
      {"Q1", {5.0 / 6.0, 0.75, 0.2}},
      {"Q2", {27.0 / 56.0, 0.625, 0.3}},
      {"Q3", {0.0, 0.0, 0.0}},
      {"Q4", {0.5, 1.0, 0.1}},
      {"Q5", {7.0 / 15.0, 2.0 / 9.0, 0.3}},
  };
  return expected;
}

// Means over Q1..Q5: MAP 1917/4200, bpref 187/360, P10 0.18.
inline constexpr double kFixtureMap = 1917.0 / 4200.0;
inline constexpr double kFixtureBpref = 187.0 / 360.0;
inline constexpr double kFixtureP10 = 0.18;

// ---------------------------------------------------------------------------
// End-to-end SlideFuse fixture: 3 systems, 2 training queries, one test
// query over documents A-D, w = 1.
//
// Training (r relevant, n judged nonrelevant, u unjudged):
//   s1: T1 r n r u   T2 r r n      support 2 2 2 1, relevant 2 1 1 0 -> raw 1 .5 .5 0
//   s2: T1 n r n n   T2 u n        support 2 2 1 1, relevant 0 1 0 0 -> raw 0 .5 0 0
//   s3: T1 r n       (no T2)       support 1 1,     relevant 1 0     -> raw 1 0
//
// Test query X, window probabilities (w = 1, clamped, own list length):
//   s1 [B A C D] N=4: B (1+.5)/2=3/4  A (1+.5+.5)/3=2/3  C (.5+.5+0)/3=1/3  D (.5+0)/2=1/4
//   s2 [B D A]   N=3: B (0+.5)/2=1/4  D (0+.5+0)/3=1/6   A (.5+0)/2=1/4
//   s3 [C A B D] N=4: C (1+0)/2=1/2   A (1+0+0)/3=1/3    B 0               D 0
//
//   R_A = 2/3 + 1/4 + 1/3 = 5/4,  R_B = 3/4 + 1/4 + 0 = 1,
//   R_C = 1/3 + 1/2 = 5/6,        R_D = 1/4 + 1/6 + 0 = 5/12
//   ranking A, B, C, D

struct EndToEndFixture {
  std::vector<SystemRun> runs;
  Qrels qrels;
  QuerySet training;
  std::size_t halfwidth = 1;
  std::vector<std::pair<DocId, double>> expected;
};

inline EndToEndFixture end_to_end_fixture() {
  EndToEndFixture f;
  f.runs.push_back(make_run("s1", {{"T1", {"t1a", "t1b", "t1c", "t1d"}},
                                   {"T2", {"t2a", "t2b", "t2c"}},
                                   {"X", {"B", "A", "C", "D"}}}));
  f.runs.push_back(make_run("s2", {{"T1", {"t1e", "t1f", "t1g", "t1h"}},
                                   {"T2", {"t2d", "t2e"}},
                                   {"X", {"B", "D", "A"}}}));
  f.runs.push_back(make_run("s3", {{"T1", {"t1i", "t1j"}}, {"X", {"C", "A", "B", "D"}}}));
  f.qrels = make_qrels({
      {"T1", "t1a", true}, {"T1", "t1b", false}, {"T1", "t1c", true},
      {"T2", "t2a", true}, {"T2", "t2b", true}, {"T2", "t2c", false},
      {"T1", "t1e", false}, {"T1", "t1f", true}, {"T1", "t1g", false}, {"T1", "t1h", false},
      {"T2", "t2e", false},
      {"T1", "t1i", true}, {"T1", "t1j", false},
      {"X", "A", true},
  });
  f.training = {"T1", "T2"};
  f.expected = {{"A", 5.0 / 4.0}, {"B", 1.0}, {"C", 5.0 / 6.0}, {"D", 5.0 / 12.0}};
  return f;
}

// ---------------------------------------------------------------------------

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (prefix + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace slidefuse::testing
