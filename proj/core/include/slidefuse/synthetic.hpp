#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "slidefuse/types.hpp"

namespace slidefuse {

/// Positional relevance prior of one simulated system: the chance that the
/// document at position p is relevant is top_relevance * exp(-p / decay).
/// Systems with `shares_pool` fill their nonrelevant slots from a small
/// per-query pool shared with other such systems, so they agree heavily on
/// nonrelevant documents.
struct SyntheticSystem {
  std::string tag;
  double top_relevance = 0.5;
  double decay = 30.0;
  bool shares_pool = false;
  /// Raw score of rank 0; scores fall linearly by score_step per position.
  double score_top = 100.0;
  double score_step = 1.0;
};

struct SyntheticCorpusOptions {
  std::size_t queries = 200;
  /// Lists are between list_length - list_length_jitter and list_length long.
  std::size_t list_length = 100;
  std::size_t list_length_jitter = 20;
  std::size_t relevant_per_query = 30;
  std::size_t shared_pool_size = 40;
  double judged_relevant_fraction = 0.8;
  double judged_nonrelevant_fraction = 0.3;
  std::uint64_t seed = 1;
  std::vector<SyntheticSystem> systems = default_systems();

  /// Two strong systems with distinct priors, four weak ones that share a
  /// nonrelevant pool.
  static std::vector<SyntheticSystem> default_systems();
};

struct SyntheticCorpus {
  std::vector<SystemRun> runs;
  Qrels qrels;
};

SyntheticCorpus make_synthetic_corpus(const SyntheticCorpusOptions& options);

struct WrittenCorpus {
  std::vector<std::string> run_paths;
  std::string qrels_path;
};

/// Writes `<tag>.run` per system and `qrels.txt` into `directory`, which
/// must exist.
WrittenCorpus write_synthetic_corpus(const SyntheticCorpus& corpus, const std::string& directory);

}  // namespace slidefuse
