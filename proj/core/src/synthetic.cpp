#include "slidefuse/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "slidefuse/corpus_io.hpp"
#include "slidefuse/shuffle.hpp"

namespace slidefuse {
namespace {

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

std::string query_name(std::size_t q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "Q%04zu", q + 1);
  return buf;
}

}  // namespace

std::vector<SyntheticSystem> SyntheticCorpusOptions::default_systems() {
  return {
      {"strongA", 0.75, 25.0, false, 30.0, 0.25},
      {"strongB", 0.60, 40.0, false, 1.0, 0.009},
      {"weakA", 0.12, 60.0, true, 500.0, 4.0},
      {"weakB", 0.10, 80.0, true, 12.0, 0.1},
      {"weakC", 0.08, 50.0, true, 0.9, 0.008},
      {"weakD", 0.15, 30.0, true, 75.0, 0.5},
  };
}

SyntheticCorpus make_synthetic_corpus(const SyntheticCorpusOptions& options) {
  if (options.systems.empty()) throw std::invalid_argument("synthetic corpus: no systems");
  if (options.list_length_jitter >= options.list_length) {
    throw std::invalid_argument("synthetic corpus: jitter must be smaller than list length");
  }
  SyntheticCorpus corpus;
  for (const auto& system : options.systems) corpus.runs.push_back({system.tag, {}});

  for (std::size_t q = 0; q < options.queries; ++q) {
    const QueryId qid = query_name(q);
    auto engine = make_engine(options.seed, q);
    std::unordered_set<DocId> retrieved;

    for (std::size_t s = 0; s < options.systems.size(); ++s) {
      const SyntheticSystem& system = options.systems[s];
      const std::size_t length =
          options.list_length - uniform_below(engine, options.list_length_jitter + 1);
      std::unordered_set<DocId> used;
      ResultList list{qid, {}};
      std::size_t background = 0;
      for (Position p = 0; p < length; ++p) {
        const double prior = system.top_relevance * std::exp(-static_cast<double>(p) / system.decay);
        DocId doc;
        for (int attempt = 0; attempt < 8 && doc.empty(); ++attempt) {
          DocId candidate;
          if (uniform01(engine) < prior) {
            candidate = qid + "-R" + std::to_string(uniform_below(engine, options.relevant_per_query));
          } else if (system.shares_pool) {
            candidate = qid + "-S" + std::to_string(uniform_below(engine, options.shared_pool_size));
          } else {
            break;
          }
          if (!used.contains(candidate)) doc = std::move(candidate);
        }
        if (doc.empty()) doc = qid + "-" + system.tag + "-D" + std::to_string(background++);
        used.insert(doc);
        retrieved.insert(doc);
        list.entries.push_back({doc, p, system.score_top - system.score_step * static_cast<double>(p)});
      }
      corpus.runs[s].lists.emplace(qid, std::move(list));
    }

    bool any_relevant = false;
    for (std::size_t r = 0; r < options.relevant_per_query; ++r) {
      if (uniform01(engine) < options.judged_relevant_fraction) {
        corpus.qrels.add(qid, qid + "-R" + std::to_string(r), true);
        any_relevant = true;
      }
    }
    if (!any_relevant) corpus.qrels.add(qid, qid + "-R0", true);
    std::vector<DocId> ordered(retrieved.begin(), retrieved.end());
    std::sort(ordered.begin(), ordered.end());
    for (const auto& doc : ordered) {
      if (doc.find("-R") != std::string::npos) continue;
      if (uniform01(engine) < options.judged_nonrelevant_fraction) corpus.qrels.add(qid, doc, false);
    }
  }
  return corpus;
}

WrittenCorpus write_synthetic_corpus(const SyntheticCorpus& corpus, const std::string& directory) {
  namespace fs = std::filesystem;
  WrittenCorpus written;
  for (const auto& run : corpus.runs) {
    const std::string path = (fs::path(directory) / (run.system_tag + ".run")).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_run_file(out, run);
    written.run_paths.push_back(path);
  }
  written.qrels_path = (fs::path(directory) / "qrels.txt").string();
  std::ofstream out(written.qrels_path);
  if (!out) throw std::runtime_error("cannot write " + written.qrels_path);
  write_qrels(out, corpus.qrels);
  return written;
}

}  // namespace slidefuse
