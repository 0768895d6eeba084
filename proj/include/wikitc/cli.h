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

#ifndef WIKITC_CLI_H_
#define WIKITC_CLI_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wikitc/corpus.h"
#include "wikitc/enrich.h"
#include "wikitc/eval.h"
#include "wikitc/learn.h"

namespace wikitc {

extern const char *const kVersion;

enum class Dataset { kReuters10, kReuters90, kNews20, kCustom };
enum class EvalMode { kCrossValidation, kFixedSplit };

const char *dataset_name(Dataset d);

struct ExperimentConfig {
  Dataset dataset = Dataset::kCustom;
  // Reuters: directory of reut2-*.sgm; news20: the two-level tree;
  // custom: a TSV corpus file.
  std::string corpus;
  std::string kb;         // knowledge-base dump, required when enriching
  std::string stoplist;   // empty: bundled list
  std::string gazetteer;  // required by T2 and T4
  std::string lexicon;    // empty: suffix/capitalization heuristic
  Preset preset = named_preset("baseline");
  std::optional<std::string> title_term;
  std::int64_t min_rank = 5;
  TrainConfig svm;
  PredictMode mode = PredictMode::kMultiLabel;
  EvalMode eval = EvalMode::kCrossValidation;
  int folds = 4;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  bool dump_models = false;
  bool compare_baseline = true;

  bool operator==(const ExperimentConfig &) const = default;
};

// Flat "key = value" lines, '#' comments. Relative paths resolve against
// base_dir. Throws ConfigError listing unknown keys, naming missing
// required keys and dangling paths.
ExperimentConfig parse_config(std::string_view text, const std::string &base_dir);
ExperimentConfig load_config(const std::string &path);

// Every key written explicitly; parse_config of the result gives back an
// equal config.
std::string config_snapshot(const ExperimentConfig &cfg);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunResult {
  std::string run_name;
  CvResult result;
  std::optional<CvResult> baseline;
  std::string manifest;
  std::vector<StageTiming> timings;
};

// Thrown by run_experiment; what() starts with "stage <name>: ".
class StageError : public std::runtime_error {
 public:
  StageError(const std::string &stage, const std::string &cause)
      : std::runtime_error("stage " + stage + ": " + cause), stage_(stage) {}
  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

// The full pipeline: load, represent, enrich, vectorize, train, predict,
// evaluate. Writes manifest.txt, metrics.tsv, improvement.tsv (when a
// baseline is compared) and models/ (when dump_models) into cfg.out.
RunResult run_experiment(const ExperimentConfig &cfg);

// Corpus loading and category subsetting as configured.
struct LoadedCorpus {
  std::vector<RawDocument> documents;
  std::vector<std::string> categories;
  Warnings warnings;
};
LoadedCorpus load_experiment_corpus(const ExperimentConfig &cfg);

// Text printed by "enrich preview": the represented document, the E2
// query, the knowledge terms and the enriched document.
std::string preview_enrichment(const ExperimentConfig &cfg,
                               const std::string &doc_id);

// "index build": writes the canonical dump and per-field statistics.
void build_index_artifacts(const std::string &dump_path,
                           const std::string &out_dir);

// Mean rows of one or more metrics.tsv files, in file order.
std::vector<NamedReport> read_metric_means(std::string_view metrics_text);

// "report": improvement table for every run in the metrics files against
// the run named baseline_name.
std::string report_from_metrics(const std::vector<std::string> &metrics_texts,
                                const std::string &baseline_name);

std::string sha256_hex(std::string_view bytes);
// Digest over the sorted relative paths and contents of a file or tree.
std::string sha256_path(const std::string &path);

}  // namespace wikitc

#endif  // WIKITC_CLI_H_
