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

#ifndef WIKITC_EVAL_H_
#define WIKITC_EVAL_H_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "wikitc/features.h"
#include "wikitc/learn.h"

namespace wikitc {

struct CategoryCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  bool operator==(const CategoryCounts &) const = default;
};

struct ContingencyTable {
  std::vector<std::string> categories;
  std::vector<CategoryCounts> counts;  // parallel to categories
  std::uint64_t documents = 0;

  // Adds another table over the same categories.
  void add(const ContingencyTable &other);
  bool operator==(const ContingencyTable &) const = default;
};

// Throws std::invalid_argument on a size mismatch or on a gold/predicted
// label outside `categories`.
ContingencyTable accumulate(const std::vector<std::set<std::string>> &gold,
                            const std::vector<std::set<std::string>> &pred,
                            const std::vector<std::string> &categories);

// Precision, recall and F with every 0/0 taken as 0.
double safe_ratio(std::uint64_t num, std::uint64_t den);
double f_measure(double precision, double recall);

double micro_f(const ContingencyTable &ct);
double macro_f(const ContingencyTable &ct);

struct CategoryMetrics {
  std::string category;
  CategoryCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;

  bool operator==(const CategoryMetrics &) const = default;
};

struct MetricReport {
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f = 0.0;
  double macro_f = 0.0;
  std::vector<CategoryMetrics> per_category;

  bool operator==(const MetricReport &) const = default;
};

MetricReport evaluate(const ContingencyTable &ct);

// 100 * (value - baseline) / baseline. Throws std::invalid_argument when
// baseline <= 0.
double relative_improvement(double baseline, double value);

// Two decimals with an explicit sign: "+5.88%", "-9.68%". A value that
// rounds to zero prints as "+0.00%".
std::string format_percent(double percent);

struct TTestResult {
  double t = 0.0;
  int degrees_of_freedom = 0;
  double p_two_tailed = 1.0;
};

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);
// Two-tailed p-value of Student's t with df degrees of freedom.
double student_t_two_tailed(double t, double df);

// Paired test on d = a - b. Zero spread gives t = 0, p = 1 when the mean
// difference is zero and t = +-infinity, p = 0 otherwise.
TTestResult paired_t_test(const std::vector<double> &a,
                          const std::vector<double> &b);

struct PipelineConfig {
  TrainConfig svm;
  PredictMode mode = PredictMode::kMultiLabel;
  unsigned threads = 0;
};

// Sees, per fold, the ids of the documents the vocabulary was fitted on.
using HygieneHook =
    std::function<void(int fold, const std::vector<std::string> &vocab_ids)>;

struct FoldOutcome {
  MetricReport report;
  ContingencyTable table;
  Vocabulary vocabulary;
  OneVsRest models;
};

// Fits the vocabulary and the one-vs-rest models on `train` only, then
// evaluates on `test`. Documents arrive already represented and enriched;
// enrichment reads only the knowledge base, never other documents.
FoldOutcome train_and_evaluate(const std::vector<const TaggedDocument *> &train,
                               const std::vector<const TaggedDocument *> &test,
                               const std::vector<std::string> &categories,
                               const PipelineConfig &cfg);

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 for one value
};

Summary summarize(const std::vector<double> &values);

struct CvResult {
  std::vector<FoldOutcome> folds;  // fold order
  Summary micro_f;
  Summary macro_f;
  // Fold tables summed, for per-category reporting.
  ContingencyTable pooled;
  Warnings warnings;

  std::vector<MetricReport> reports() const;
};

// k-fold cross-validation over stratified folds from make_folds. Errors
// from a fold are rethrown naming the fold.
CvResult run_cv(const std::vector<TaggedDocument> &docs,
                const std::vector<std::string> &categories,
                const PipelineConfig &cfg, int k, std::uint64_t seed,
                const HygieneHook &hook = {});

// Fixed train/test split (ModApte), reported as a single fold.
CvResult run_fixed_split(const std::vector<TaggedDocument> &train,
                         const std::vector<TaggedDocument> &test,
                         const std::vector<std::string> &categories,
                         const PipelineConfig &cfg);

// Metrics TSV: one row per fold plus mean and sd rows, then a per-category
// block over the pooled counts.
std::string metrics_tsv(const std::string &run_name, const CvResult &result);

struct NamedReport {
  std::string name;
  double micro_f = 0.0;
  double macro_f = 0.0;
};

// Baseline row, then one row per run with signed percent changes.
std::string improvement_tsv(const NamedReport &baseline,
                            const std::vector<NamedReport> &runs);

}  // namespace wikitc

#endif  // WIKITC_EVAL_H_
