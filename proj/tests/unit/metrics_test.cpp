#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "slidefuse/metrics.hpp"

using namespace slidefuse;
using namespace slidefuse::testing;
using Catch::Matchers::WithinAbs;

namespace {

Qrels rn_qrels(const QueryId& qid, std::initializer_list<DocId> relevant,
               std::initializer_list<DocId> nonrelevant) {
  Qrels q;
  for (const auto& d : relevant) q.add(qid, d, true);
  for (const auto& d : nonrelevant) q.add(qid, d, false);
  return q;
}

/// Random ranking over a pool of relevant / nonrelevant / unjudged documents.
struct RandomCase {
  std::vector<DocId> ranking;
  Qrels qrels;
};

RandomCase random_case(std::mt19937_64& rng) {
  RandomCase c;
  const std::size_t pool = 5 + rng() % 40;
  std::vector<DocId> docs;
  bool any_relevant = false;
  for (std::size_t i = 0; i < pool; ++i) {
    DocId d = "d" + std::to_string(i);
    switch (rng() % 3) {
      case 0: c.qrels.add("q", d, true); any_relevant = true; break;
      case 1: c.qrels.add("q", d, false); break;
      default: break;
    }
    docs.push_back(d);
  }
  if (!any_relevant) c.qrels.add("q", "never-retrieved", true);
  std::shuffle(docs.begin(), docs.end(), rng);
  docs.resize(1 + rng() % docs.size());
  c.ranking = docs;
  return c;
}

}  // namespace

TEST_CASE("average precision examples", "[metrics]") {
  const auto q = rn_qrels("q", {"a", "b"}, {"x", "y"});
  CHECK(average_precision(std::vector<DocId>{"a", "b", "x"}, q, "q") == 1.0);
  CHECK_THAT(average_precision(std::vector<DocId>{"a", "x", "b", "y"}, q, "q"),
             WithinAbs(0.8333333333333334, 1e-12));
  const auto q3 = rn_qrels("q", {"a", "b", "c"}, {"x"});
  CHECK(average_precision(std::vector<DocId>{"x", "u"}, q3, "q") == 0.0);
  CHECK_THROWS_AS(average_precision(std::vector<DocId>{"x"}, rn_qrels("q", {}, {"x"}), "q"),
                  NotEvaluable);
}

TEST_CASE("bpref examples", "[metrics]") {
  const auto q = rn_qrels("q", {"a", "b"}, {"x", "y"});
  CHECK(bpref(std::vector<DocId>{"a", "b", "x", "y"}, q, "q") == 1.0);
  CHECK(bpref(std::vector<DocId>{"a", "x", "b", "y"}, q, "q") == 0.75);
  CHECK(bpref(std::vector<DocId>{"x", "y"}, rn_qrels("q", {"a"}, {"x", "y"}), "q") == 0.0);
  // Unjudged documents are invisible.
  CHECK(bpref(std::vector<DocId>{"u1", "a", "u2", "x", "b"}, q, "q") == 0.75);
  // No judged nonrelevant: each retrieved relevant scores 1.
  CHECK(bpref(std::vector<DocId>{"u", "a"}, rn_qrels("q", {"a", "b"}, {}), "q") == 0.5);
  // Count above is capped at min(R, NN) = 1.
  CHECK(bpref(std::vector<DocId>{"x", "y", "a"}, rn_qrels("q", {"a"}, {"x", "y"}), "q") == 0.0);
  CHECK_THROWS_AS(bpref(std::vector<DocId>{"x"}, rn_qrels("q", {}, {"x"}), "q"), NotEvaluable);
}

TEST_CASE("precision at 10 examples", "[metrics]") {
  const auto q = rn_qrels("q", {"r1", "r2", "r3", "r4"}, {});
  CHECK(precision_at_10(std::vector<DocId>{"r1", "n", "n", "r2", "n", "n", "n", "n", "r3", "n", "r4"},
                        q, "q") == 0.3);
  CHECK(precision_at_10(std::vector<DocId>{"r1", "n", "r2", "n"}, q, "q") == 0.2);
  CHECK(precision_at_10(std::vector<DocId>{"n1", "n2"}, q, "q") == 0.0);
  CHECK(precision_at_10(std::vector<DocId>{}, q, "q") == 0.0);
}

TEST_CASE("five-query fixture matches hand values and reference oracles", "[metrics]") {
  const auto f = metric_fixture();
  for (const auto& [qid, want] : metric_fixture_expected()) {
    const auto& ranking = f.run.at(qid);
    INFO(qid);
    CHECK_THAT(average_precision(ranking, f.qrels, qid), WithinAbs(want.ap, 1e-9));
    CHECK_THAT(bpref(ranking, f.qrels, qid), WithinAbs(want.bpref, 1e-9));
    CHECK_THAT(precision_at_10(ranking, f.qrels, qid), WithinAbs(want.p10, 1e-9));
    CHECK_THAT(reference_ap(ranking, f.qrels, qid), WithinAbs(want.ap, 1e-9));
    CHECK_THAT(reference_bpref(ranking, f.qrels, qid), WithinAbs(want.bpref, 1e-9));
    CHECK_THAT(reference_p10(ranking, f.qrels, qid), WithinAbs(want.p10, 1e-9));
  }
  const auto eval = evaluate_run(f.run, f.qrels);
  CHECK(eval.map.per_query.size() == 5);
  CHECK_FALSE(eval.map.per_query.count("Q6"));
  CHECK_THAT(eval.map.mean, WithinAbs(kFixtureMap, 1e-9));
  CHECK_THAT(eval.bpref.mean, WithinAbs(kFixtureBpref, 1e-9));
  CHECK_THAT(eval.p10.mean, WithinAbs(kFixtureP10, 1e-9));
  CHECK(&eval[Measure::bpref] == &eval.bpref);
}

TEST_CASE("evaluate_run", "[metrics]") {
  SECTION("singleton mean") {
    RankedRun run{{"q", {"a", "x", "b"}}};
    const auto q = rn_qrels("q", {"a", "b"}, {"x"});
    const auto eval = evaluate_run(run, q);
    CHECK(eval.map.mean == eval.map.per_query.at("q"));
    CHECK(eval.bpref.mean == eval.bpref.per_query.at("q"));
  }
  SECTION("queries without relevant judgments leave means unchanged") {
    auto f = metric_fixture();
    const auto before = evaluate_run(f.run, f.qrels);
    f.run["Q7"] = {"z1", "z2"};
    f.qrels.add("Q7", "z1", false);
    const auto after = evaluate_run(f.run, f.qrels);
    CHECK(after.map.mean == before.map.mean);
    CHECK(after.bpref.mean == before.bpref.mean);
    CHECK(after.p10.mean == before.p10.mean);
  }
  SECTION("nothing evaluable") {
    RankedRun run{{"q", {"x"}}};
    CHECK_THROWS_AS(evaluate_run(run, rn_qrels("q", {}, {"x"})), NotEvaluable);
  }
  SECTION("fused and system run overloads agree") {
    const auto f = metric_fixture();
    FusedRun fused;
    SystemRun system{"s", {}};
    for (const auto& [qid, docs] : f.run) {
      FusedList list{qid, {}};
      for (std::size_t i = 0; i < docs.size(); ++i) {
        list.entries.push_back({docs[i], static_cast<double>(docs.size() - i)});
      }
      fused.emplace(qid, list);
      system.lists.emplace(qid, make_list(qid, docs));
    }
    CHECK(evaluate_run(fused, f.qrels).map.mean == evaluate_run(f.run, f.qrels).map.mean);
    CHECK(evaluate_run(system, f.qrels).bpref.mean == evaluate_run(f.run, f.qrels).bpref.mean);
  }
}

TEST_CASE("measure names", "[metrics]") {
  CHECK(measure_name(Measure::map) == "MAP");
  CHECK(measure_name(Measure::bpref) == "bpref");
  CHECK(measure_name(Measure::p10) == "P10");
  CHECK(parse_measure("MAP") == Measure::map);
  CHECK(parse_measure("Bpref") == Measure::bpref);
  CHECK(parse_measure("p10") == Measure::p10);
  CHECK_THROWS_AS(parse_measure("ndcg"), std::invalid_argument);
}

TEST_CASE("metrics agree with reference oracles on random rankings", "[metrics][property]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = random_case(rng);
    const double ap = average_precision(c.ranking, c.qrels, "q");
    const double bp = bpref(c.ranking, c.qrels, "q");
    const double p10 = precision_at_10(c.ranking, c.qrels, "q");
    CHECK_THAT(ap, WithinAbs(reference_ap(c.ranking, c.qrels, "q"), 1e-12));
    CHECK_THAT(bp, WithinAbs(reference_bpref(c.ranking, c.qrels, "q"), 1e-12));
    CHECK(p10 == reference_p10(c.ranking, c.qrels, "q"));
    for (double v : {ap, bp, p10}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("moving a relevant document up never hurts AP or bpref", "[metrics][property]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    auto c = random_case(rng);
    // Find an adjacent (non-relevant, relevant) pair and swap it.
    for (std::size_t i = 1; i < c.ranking.size(); ++i) {
      if (c.qrels.is_relevant("q", c.ranking[i]) && !c.qrels.is_relevant("q", c.ranking[i - 1])) {
        const double ap = average_precision(c.ranking, c.qrels, "q");
        const double bp = bpref(c.ranking, c.qrels, "q");
        auto swapped = c.ranking;
        std::swap(swapped[i], swapped[i - 1]);
        CHECK(average_precision(swapped, c.qrels, "q") >= ap);
        CHECK(bpref(swapped, c.qrels, "q") >= bp);
        break;
      }
    }
  }
}

TEST_CASE("P10 ignores everything below position 10", "[metrics][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_case(rng);
    const double before = precision_at_10(c.ranking, c.qrels, "q");
    if (c.ranking.size() < 10) continue;
    auto tail_shuffled = c.ranking;
    std::shuffle(tail_shuffled.begin() + 10, tail_shuffled.end(), rng);
    tail_shuffled.push_back("extra");
    CHECK(precision_at_10(tail_shuffled, c.qrels, "q") == before);
  }
}

TEST_CASE("bpref is unchanged by inserting unjudged documents", "[metrics][property]") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_case(rng);
    const double before = bpref(c.ranking, c.qrels, "q");
    auto padded = c.ranking;
    for (int k = 0; k < 5; ++k) {
      const auto at = padded.begin() + static_cast<long>(rng() % (padded.size() + 1));
      padded.insert(at, "unjudged" + std::to_string(k));
    }
    CHECK(bpref(padded, c.qrels, "q") == before);
  }
}
