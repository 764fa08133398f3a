// Writes a reproducible synthetic TREC corpus (run files, qrels and an
// experiment config) for exercising the fusion pipeline without TREC data.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "slidefuse/experiments.hpp"
#include "slidefuse/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic fusion corpus", "make_synthetic_corpus"};
  std::string out_dir;
  std::size_t groups = 1;
  slidefuse::SyntheticCorpusOptions options;
  app.add_option("--out,-o", out_dir, "Output directory (created if missing)")->required();
  app.add_option("--queries", options.queries, "Number of queries")->capture_default_str();
  app.add_option("--list-length", options.list_length, "Maximum result list length")
      ->capture_default_str();
  app.add_option("--jitter", options.list_length_jitter, "Maximum list shortening")
      ->capture_default_str();
  app.add_option("--groups", groups, "Number of six-system groups")->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", options.seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const auto base = slidefuse::SyntheticCorpusOptions::default_systems();
  options.systems.clear();
  for (std::size_t g = 0; g < groups; ++g) {
    for (auto system : base) {
      system.tag += "_g" + std::to_string(g + 1);
      system.top_relevance *= 1.0 - 0.05 * static_cast<double>(g % 4);
      options.systems.push_back(system);
    }
  }

  try {
    std::filesystem::create_directories(out_dir);
    const auto corpus = slidefuse::make_synthetic_corpus(options);
    const auto written = slidefuse::write_synthetic_corpus(corpus, out_dir);

    nlohmann::ordered_json config;
    config["qrels"] = std::filesystem::path(written.qrels_path).filename().string();
    nlohmann::ordered_json group_list = nlohmann::ordered_json::array();
    for (std::size_t g = 0; g < groups; ++g) {
      nlohmann::ordered_json runs = nlohmann::ordered_json::array();
      for (std::size_t s = 0; s < base.size(); ++s) {
        runs.push_back(
            std::filesystem::path(written.run_paths[g * base.size() + s]).filename().string());
      }
      group_list.push_back({{"name", slidefuse::ordinal_name(g)}, {"runs", runs}});
    }
    config["groups"] = group_list;
    config["shuffles"] = 5;
    config["train_fraction"] = 0.10;
    config["w"] = 5;
    config["segments"] = 25;
    config["seed"] = 2007;
    config["sweep_fractions"] = {0.10, 0.20, 0.30, 0.40, 0.50};
    config["sweep_metric"] = "map";
    std::ofstream cfg(std::filesystem::path(out_dir) / "experiment.json");
    cfg << config.dump(2) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "make_synthetic_corpus: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
