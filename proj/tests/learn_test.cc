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

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/test_support.h"
#include "wikitc/learn.h"

namespace wikitc {
namespace {

using testing::dense_point;
using testing::svm_fixtures;
using testing::svm_oracle;

TEST_CASE("analytic two-point problem") {
  std::vector<SparseVector> x = {dense_point({2.0}), dense_point({-2.0})};
  std::vector<int> y = {1, -1};
  TrainConfig cfg;
  cfg.c = 10.0;
  cfg.tolerance = 1e-8;
  TrainReport report;
  LinearModel m = train_binary_svm(x, y, cfg, 1, &report);
  REQUIRE(m.weights.size() == 1);
  CHECK(m.weights[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(m.bias) < 1e-6);
  CHECK(primal_objective(x, y, m, cfg.c) == doctest::Approx(0.125).epsilon(1e-6));
  CHECK(m.decision(x[0]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(m.decision(x[1]) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(report.converged);
  CHECK(report.primal - report.dual <= 1e-8 * std::abs(report.primal) + 1e-12);
}

TEST_CASE("single-class problems") {
  std::vector<SparseVector> x = {dense_point({1.0, 0.0}), dense_point({0.0, 1.0})};
  TrainReport report;
  LinearModel pos = train_binary_svm(x, {1, 1}, {}, 2, &report);
  CHECK(pos.bias == 1.0);
  CHECK(pos.weights == std::vector<double>{0.0, 0.0});
  CHECK(primal_objective(x, {1, 1}, pos, 1.0) == 0.0);
  CHECK_FALSE(report.warnings.empty());
  CHECK(train_binary_svm(x, {-1, -1}, {}, 2).bias == -1.0);
}

TEST_CASE("invalid input") {
  std::vector<SparseVector> x = {dense_point({1.0})};
  CHECK_THROWS_AS(train_binary_svm({}, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(train_binary_svm(x, {0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(train_binary_svm(x, {1, -1}, {}), std::invalid_argument);
  TrainConfig bad;
  bad.c = 0.0;
  CHECK_THROWS_AS(train_binary_svm(x, {1}, bad), std::invalid_argument);
}

TEST_CASE("objective agrees with the dual oracle") {
  for (const auto &f : svm_fixtures()) {
    CAPTURE(f.name);
    TrainConfig cfg;
    cfg.c = f.c;
    TrainReport report;
    LinearModel m = train_binary_svm(f.x, f.y, cfg, 0, &report);
    auto oracle = svm_oracle(f.x, f.y, f.c);
    double p = primal_objective(f.x, f.y, m, f.c);
    CHECK(report.converged);
    CHECK(std::abs(p - oracle.primal) <= 1e-3 * std::abs(oracle.primal) + 1e-9);
    CHECK(p >= oracle.dual - 1e-9);
    CHECK(report.primal == doctest::Approx(p).epsilon(1e-9));
  }
}

TEST_CASE("hard-margin property on separable data") {
  for (const auto &f : svm_fixtures()) {
    if (f.name.find("separable") == std::string::npos || f.c < 100) continue;
    CAPTURE(f.name);
    TrainConfig cfg;
    cfg.c = f.c;
    LinearModel m = train_binary_svm(f.x, f.y, cfg);
    for (std::size_t i = 0; i < f.x.size(); ++i) {
      CHECK(f.y[i] * m.decision(f.x[i]) >= 1.0 - 1e-3);
    }
  }
}

TEST_CASE("dual trace never increases and training is deterministic") {
  const auto fixtures = svm_fixtures();
  const auto &f = fixtures.back();
  TrainConfig cfg;
  cfg.c = f.c;
  TrainReport a, b;
  LinearModel ma = train_binary_svm(f.x, f.y, cfg, 0, &a);
  LinearModel mb = train_binary_svm(f.x, f.y, cfg, 0, &b);
  CHECK(ma == mb);
  CHECK(a.dual_trace == b.dual_trace);
  REQUIRE_FALSE(a.dual_trace.empty());
  for (std::size_t i = 1; i < a.dual_trace.size(); ++i) {
    CHECK(a.dual_trace[i] <= a.dual_trace[i - 1] + 1e-12);
  }
  CHECK(a.dual <= a.primal + 1e-12);
}

TEST_CASE("iteration cap reports non-convergence") {
  const auto fixtures = svm_fixtures();
  const auto &f = fixtures.back();
  TrainConfig cfg;
  cfg.c = 1000.0;
  cfg.max_epochs = 0;
  TrainReport report;
  train_binary_svm(f.x, f.y, cfg, 0, &report);
  CHECK_FALSE(report.converged);
  CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("one-vs-rest") {
  std::vector<SparseVector> x = {dense_point({1, 0, 0}), dense_point({0.9, 0.1, 0}),
                                 dense_point({0, 1, 0}), dense_point({0.1, 0.9, 0}),
                                 dense_point({0.6, 0.8, 0})};
  std::vector<std::set<std::string>> labels = {{"a"}, {"a"}, {"b"}, {"b"}, {"a", "b"}};
  TrainConfig cfg;
  cfg.c = 100.0;
  OneVsRest ovr = train_one_vs_rest(x, labels, {"a", "b", "c"}, cfg, 3, 2);
  CHECK(ovr.categories == std::vector<std::string>{"a", "b"});
  CHECK(ovr.models.size() == 2);
  CHECK(ovr.skipped == std::vector<std::string>{"c"});
  CHECK_FALSE(ovr.warnings.empty());
  // The multi-label point is a positive in both problems.
  CHECK(ovr.models[0].decision(x[4]) > 0);
  CHECK(ovr.models[1].decision(x[4]) > 0);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(predict(ovr, x[i], PredictMode::kMultiLabel) == labels[i]);
    CHECK(predict(ovr, x[i], PredictMode::kSingleLabel) == labels[i]);
  }
  OneVsRest serial = train_one_vs_rest(x, labels, {"a", "b", "c"}, cfg, 3, 1);
  CHECK(serial.models == ovr.models);
  CHECK_THROWS(predict(OneVsRest{}, x[0], PredictMode::kSingleLabel));
}

TEST_CASE("label decisions") {
  std::vector<std::string> cats = {"a", "b"};
  CHECK(labels_from_decisions(cats, {0.5, -0.2}, PredictMode::kMultiLabel) ==
        std::set<std::string>{"a"});
  CHECK(labels_from_decisions(cats, {0.5, -0.2}, PredictMode::kSingleLabel) ==
        std::set<std::string>{"a"});
  CHECK(labels_from_decisions(cats, {-0.7, -0.2}, PredictMode::kSingleLabel) ==
        std::set<std::string>{"b"});
  CHECK(labels_from_decisions(cats, {-0.7, -0.2}, PredictMode::kMultiLabel).empty());
  CHECK(labels_from_decisions(cats, {0.3, 0.3}, PredictMode::kSingleLabel) ==
        std::set<std::string>{"a"});
}

TEST_CASE("model text round trip") {
  LinearModel m;
  m.weights = {0.0, 1.0 / 3.0, 0.0, -2.5e-17, 7.0};
  m.bias = -0.123456789012345678;
  std::string text = write_model(m);
  CHECK(text.rfind("bias\t", 0) == 0);
  LinearModel back = read_model(text);
  CHECK(back == m);
  CHECK(write_model(back) == text);
  CHECK_THROWS_AS(read_model("weights\n"), ParseError);
}

}  // namespace
}  // namespace wikitc
