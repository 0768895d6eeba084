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

#ifndef WIKITC_LEARN_H_
#define WIKITC_LEARN_H_

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wikitc/features.h"

namespace wikitc {

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;

  double decision(const SparseVector &x) const { return x.dot(weights) + bias; }
  bool operator==(const LinearModel &) const = default;
};

struct TrainConfig {
  double c = 1.0;
  // Stop once (P - D) / P <= tolerance, where D is the dual objective at
  // the current iterate. Also the initial threshold on the maximal KKT
  // violation.
  double tolerance = 1e-4;
  // Iteration budget, in multiples of the number of examples.
  int max_epochs = 1000;
  std::uint64_t seed = 0;
  // Kernel column cache budget in bytes.
  std::size_t cache_bytes = std::size_t{256} << 20;

  bool operator==(const TrainConfig &) const = default;
};

struct TrainReport {
  // Dual objective (minimization form) sampled once per epoch of n
  // iterations, plus the final value.
  std::vector<double> dual_trace;
  double primal = 0.0;
  double dual = 0.0;  // maximization form, a lower bound on primal
  std::size_t iterations = 0;
  bool converged = false;
  Warnings warnings;
};

// P(w, b) = 0.5 |w|^2 + C sum_i max(0, 1 - y_i (w.x_i + b))
double primal_objective(const std::vector<SparseVector> &x,
                        const std::vector<int> &y, const LinearModel &model,
                        double c);

// Sequential minimal optimization on the dual with the equality
// constraint, so the bias is not regularized. dimension 0 means "largest
// feature index + 1". A single-class problem yields w = 0 and the sole
// class as bias, with a warning.
LinearModel train_binary_svm(const std::vector<SparseVector> &x,
                             const std::vector<int> &y, const TrainConfig &cfg,
                             std::size_t dimension = 0,
                             TrainReport *report = nullptr);

struct OneVsRest {
  std::vector<std::string> categories;  // trained, in input order
  std::vector<LinearModel> models;
  std::vector<std::string> skipped;     // categories without positives
  Warnings warnings;
};

// One binary problem per category (positive iff the category is in the
// document's label set). Problems train concurrently on up to `threads`
// workers; 0 picks the hardware concurrency.
OneVsRest train_one_vs_rest(const std::vector<SparseVector> &x,
                            const std::vector<std::set<std::string>> &labels,
                            const std::vector<std::string> &categories,
                            const TrainConfig &cfg, std::size_t dimension,
                            unsigned threads = 0);

enum class PredictMode { kMultiLabel, kSingleLabel };

std::set<std::string> predict(const OneVsRest &models, const SparseVector &x,
                              PredictMode mode);

// Decision values in category order.
std::vector<double> decision_values(const OneVsRest &models,
                                    const SparseVector &x);

// Argmax with ties broken by position; the multi-label rule is value > 0.
std::set<std::string> labels_from_decisions(
    const std::vector<std::string> &categories,
    const std::vector<double> &values, PredictMode mode);

// "bias<TAB>b<TAB>dimension" then "featureIndex<TAB>weight" per nonzero.
std::string write_model(const LinearModel &model);
LinearModel read_model(std::string_view text);

}  // namespace wikitc

#endif  // WIKITC_LEARN_H_
