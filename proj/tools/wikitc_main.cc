// Copyright 2026 The wikitc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, index build, index search, enrich preview,
// report.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wikitc/cli.h"
#include "wikitc/kbindex.h"

namespace {

int run_command(const std::string &config_path,
                const std::optional<std::string> &preset,
                const std::optional<std::uint64_t> &seed,
                const std::optional<std::string> &out) {
  wikitc::ExperimentConfig cfg = wikitc::load_config(config_path);
  if (preset) {
    cfg.preset = wikitc::named_preset(*preset);
    if (!cfg.preset.is_baseline() && cfg.kb.empty()) {
      throw wikitc::ConfigError("preset " + *preset + " needs 'kb' in the config");
    }
  }
  if (seed) {
    cfg.seed = *seed;
    cfg.svm.seed = *seed;
  }
  if (out) cfg.out = *out;
  wikitc::RunResult run = wikitc::run_experiment(cfg);
  std::printf("%s\tmicro_f %.4f\tmacro_f %.4f\n", run.run_name.c_str(),
              run.result.micro_f.mean, run.result.macro_f.mean);
  if (run.baseline) {
    std::printf("baseline\tmicro_f %.4f\tmacro_f %.4f\n",
                run.baseline->micro_f.mean, run.baseline->macro_f.mean);
  }
  for (const auto &w : run.result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("wrote %s\n", cfg.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Knowledge-enriched text categorization toolkit"};
  app.set_version_flag("--version", std::string(wikitc::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> preset, out;
  std::optional<std::uint64_t> seed;
  auto *run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--preset", preset, "A1..A5 or baseline (overrides the config)");
  run->add_option("--seed", seed, "Seed (overrides the config)");
  run->add_option("--out", out, "Output directory (overrides the config)");

  auto *index = app.add_subcommand("index", "Knowledge-base index tools");
  index->require_subcommand(1);
  std::string dump, index_out, query;
  std::size_t top = 10;
  auto *build = index->add_subcommand("build", "Validate a dump and write index statistics");
  build->add_option("--dump", dump, "Knowledge-base dump (TSV)")->required()->check(CLI::ExistingFile);
  build->add_option("--out", index_out, "Output directory")->required();
  auto *search = index->add_subcommand("search", "Run a fielded query");
  search->add_option("--dump", dump, "Knowledge-base dump (TSV)")->required()->check(CLI::ExistingFile);
  search->add_option("--query", query, "Query text")->required();
  search->add_option("--top", top, "Number of hits")->check(CLI::PositiveNumber);

  auto *enrich = app.add_subcommand("enrich", "Enrichment tools");
  enrich->require_subcommand(1);
  std::string doc_id;
  auto *preview = enrich->add_subcommand("preview", "Show a document before and after enrichment");
  preview->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  preview->add_option("--doc-id", doc_id, "Document id")->required();
  preview->add_option("--preset", preset, "A1..A5 or baseline (overrides the config)");

  auto *report = app.add_subcommand("report", "Improvement table from metrics files");
  std::vector<std::string> metrics_files;
  std::string baseline_name = "baseline";
  report->add_option("metrics", metrics_files, "metrics.tsv files")->required()->check(CLI::ExistingFile);
  report->add_option("--baseline", baseline_name, "Name of the baseline run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, preset, seed, out);
    if (*build) {
      wikitc::build_index_artifacts(dump, index_out);
      std::printf("wrote %s\n", index_out.c_str());
      return 0;
    }
    if (*search) {
      auto idx = wikitc::Index::build(wikitc::parse_kb_dump(wikitc::read_file(dump)));
      for (const auto &hit : idx.search(wikitc::parse_query(query), top)) {
        std::printf("%.6f\t%s\n", hit.score, hit.record_title.c_str());
      }
      return 0;
    }
    if (*preview) {
      auto cfg = wikitc::load_config(config_path);
      if (preset) cfg.preset = wikitc::named_preset(*preset);
      std::cout << wikitc::preview_enrichment(cfg, doc_id);
      return 0;
    }
    if (*report) {
      std::vector<std::string> texts;
      for (const auto &f : metrics_files) texts.push_back(wikitc::read_file(f));
      std::cout << wikitc::report_from_metrics(texts, baseline_name);
      return 0;
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
