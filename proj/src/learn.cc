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

#include "wikitc/learn.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <list>
#include <thread>
#include <unordered_map>

namespace wikitc {

double primal_objective(const std::vector<SparseVector> &x,
                        const std::vector<int> &y, const LinearModel &model,
                        double c) {
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    loss += std::max(0.0, 1.0 - y[i] * model.decision(x[i]));
  }
  return 0.5 * reg + c * loss;
}

namespace {

// Columns of the linear kernel K(i, t) = x_i . x_t with an LRU cache.
class KernelColumns {
 public:
  KernelColumns(const std::vector<SparseVector> &x, std::size_t dimension,
                std::size_t cache_bytes)
      : x_(x), scratch_(dimension, 0.0) {
    const std::size_t column_bytes = std::max<std::size_t>(1, x.size()) * 8;
    capacity_ = std::max<std::size_t>(2, cache_bytes / column_bytes);
    diagonal_.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double s = 0.0;
      for (const auto &e : x[i].entries) s += e.weight * e.weight;
      diagonal_[i] = s;
    }
  }

  double diagonal(std::size_t i) const { return diagonal_[i]; }

  const std::vector<double> &column(std::size_t i) {
    auto it = cache_.find(i);
    if (it != cache_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.second);
      return it->second.first;
    }
    if (cache_.size() >= capacity_) {
      cache_.erase(lru_.back());
      lru_.pop_back();
    }
    std::vector<double> col(x_.size());
    for (const auto &e : x_[i].entries) scratch_[e.index] = e.weight;
    for (std::size_t t = 0; t < x_.size(); ++t) {
      double s = 0.0;
      for (const auto &e : x_[t].entries) s += e.weight * scratch_[e.index];
      col[t] = s;
    }
    for (const auto &e : x_[i].entries) scratch_[e.index] = 0.0;
    lru_.push_front(i);
    auto [pos, _] = cache_.emplace(i, std::make_pair(std::move(col), lru_.begin()));
    return pos->second.first;
  }

 private:
  const std::vector<SparseVector> &x_;
  std::vector<double> scratch_;
  std::vector<double> diagonal_;
  std::size_t capacity_;
  std::list<std::size_t> lru_;
  std::unordered_map<std::size_t,
                     std::pair<std::vector<double>, std::list<std::size_t>::iterator>>
      cache_;
};

constexpr double kTau = 1e-12;
constexpr double kMinKktThreshold = 1e-13;

}  // namespace

LinearModel train_binary_svm(const std::vector<SparseVector> &x,
                             const std::vector<int> &y, const TrainConfig &cfg,
                             std::size_t dimension, TrainReport *report) {
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument("train_binary_svm needs |X| = |y| >= 1");
  }
  if (!(cfg.c > 0.0)) throw std::invalid_argument("C must be positive");
  for (const auto &v : x) {
    for (const auto &e : v.entries) {
      dimension = std::max<std::size_t>(dimension, e.index + 1);
    }
  }
  TrainReport local;
  TrainReport &rep = report ? *report : local;
  rep = TrainReport{};

  const std::size_t n = x.size();
  std::size_t positives = 0;
  for (int label : y) {
    if (label != 1 && label != -1) {
      throw std::invalid_argument("labels must be +1 or -1");
    }
    positives += label == 1;
  }
  LinearModel model;
  model.weights.assign(dimension, 0.0);
  if (positives == 0 || positives == n) {
    model.bias = positives == n ? 1.0 : -1.0;
    rep.warnings.push_back("single-class training set; constant model");
    rep.primal = primal_objective(x, y, model, cfg.c);
    rep.dual = rep.primal;
    rep.converged = true;
    return model;
  }

  const double c = cfg.c;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // Q alpha - e
  KernelColumns kernel(x, dimension, cfg.cache_bytes);

  auto upper = [&](std::size_t t) { return alpha[t] >= c; };
  auto lower = [&](std::size_t t) { return alpha[t] <= 0.0; };
  auto dual_min = [&] {
    double v = 0.0;
    for (std::size_t t = 0; t < n; ++t) v += alpha[t] * (grad[t] - 1.0);
    return 0.5 * v;
  };

  // Model implied by the current alpha, bias from the KKT conditions.
  auto extract = [&] {
    LinearModel m;
    m.weights.assign(dimension, 0.0);
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
      double yg = y[t] * grad[t];
      if (upper(t)) {
        if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else if (lower(t)) {
        if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else {
        ++free_count;
        sum_free += yg;
      }
    }
    m.bias = -(free_count > 0 ? sum_free / free_count : (ub + lb) / 2.0);
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] == 0.0) continue;
      for (const auto &e : x[t].entries) {
        m.weights[e.index] += alpha[t] * y[t] * e.weight;
      }
    }
    return m;
  };

  const std::size_t max_iter =
      static_cast<std::size_t>(std::max(1, cfg.max_epochs)) * std::max<std::size_t>(n, 100);
  std::size_t iter = 0;
  double kkt_threshold = cfg.tolerance;
  rep.dual_trace.push_back(dual_min());
  while (iter < max_iter) {
    // Working set selection using second-order information.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if ((y[t] == 1 && !upper(t)) || (y[t] == -1 && !lower(t))) {
        double v = -y[t] * grad[t];
        if (v >= gmax) {
          gmax = v;
          i = t;
        }
      }
    }
    if (i == n) break;
    const std::vector<double> &ki = kernel.column(i);
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      if ((y[t] == 1 && !lower(t)) || (y[t] == -1 && !upper(t))) {
        double yg = y[t] * grad[t];
        gmax2 = std::max(gmax2, yg);
        double b = gmax + yg;
        if (b > 0.0) {
          double a = kernel.diagonal(i) + kernel.diagonal(t) - 2.0 * ki[t];
          if (a <= 0.0) a = kTau;
          double obj = -(b * b) / a;
          if (obj <= best_obj) {
            best_obj = obj;
            j = t;
          }
        }
      }
    }
    if (gmax + gmax2 < kkt_threshold || j == n) {
      // Small KKT violations can still leave a large primal excess when C
      // is large, so confirm with the relative duality gap.
      const double primal = primal_objective(x, y, extract(), c);
      const double gap = primal + dual_min();
      if (gap <= cfg.tolerance * std::max(std::fabs(primal), 1e-12) ||
          kkt_threshold < kMinKktThreshold || j == n) {
        rep.converged = true;
        break;
      }
      kkt_threshold /= 10.0;
      continue;
    }
    ++iter;
    // Copy column i: fetching column j may evict it.
    std::vector<double> col_i = ki;
    const std::vector<double> &col_j = kernel.column(j);
    const double qii = kernel.diagonal(i);
    const double qjj = kernel.diagonal(j);
    const double qij = y[i] * y[j] * col_i[j];
    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = qii + qjj + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      double delta = (-grad[i] - grad[j]) / quad;
      double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = qii + qjj - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      double delta = (grad[i] - grad[j]) / quad;
      double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * col_i[t] * dai + y[j] * col_j[t] * daj);
    }
    if (iter % n == 0) rep.dual_trace.push_back(dual_min());
  }
  rep.iterations = iter;
  if (!rep.converged) {
    rep.warnings.push_back("SMO stopped at the iteration limit");
  }
  rep.dual_trace.push_back(dual_min());

  model = extract();
  rep.dual = -rep.dual_trace.back();
  rep.primal = primal_objective(x, y, model, cfg.c);
  return model;
}

OneVsRest train_one_vs_rest(const std::vector<SparseVector> &x,
                            const std::vector<std::set<std::string>> &labels,
                            const std::vector<std::string> &categories,
                            const TrainConfig &cfg, std::size_t dimension,
                            unsigned threads) {
  if (x.size() != labels.size()) {
    throw std::invalid_argument("one label set per example required");
  }
  OneVsRest out;
  std::vector<std::string> trainable;
  for (const auto &category : categories) {
    bool has_positive = std::any_of(labels.begin(), labels.end(),
                                    [&](const auto &s) { return s.count(category); });
    if (has_positive) {
      trainable.push_back(category);
    } else {
      out.skipped.push_back(category);
      out.warnings.push_back("category " + category +
                             " has no positive training example; skipped");
    }
  }
  std::vector<LinearModel> models(trainable.size());
  std::vector<Warnings> warnings(trainable.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t c = next.fetch_add(1);
      if (c >= trainable.size()) return;
      std::vector<int> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = labels[i].count(trainable[c]) ? 1 : -1;
      }
      TrainReport report;
      models[c] = train_binary_svm(x, y, cfg, dimension, &report);
      for (auto &w : report.warnings) {
        warnings[c].push_back(trainable[c] + ": " + w);
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, trainable.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();

  out.categories = std::move(trainable);
  out.models = std::move(models);
  for (auto &w : warnings) {
    out.warnings.insert(out.warnings.end(), w.begin(), w.end());
  }
  return out;
}

std::vector<double> decision_values(const OneVsRest &models,
                                    const SparseVector &x) {
  std::vector<double> values;
  values.reserve(models.models.size());
  for (const auto &m : models.models) values.push_back(m.decision(x));
  return values;
}

std::set<std::string> labels_from_decisions(
    const std::vector<std::string> &categories,
    const std::vector<double> &values, PredictMode mode) {
  std::set<std::string> out;
  if (categories.empty()) return out;
  if (mode == PredictMode::kMultiLabel) {
    for (std::size_t c = 0; c < categories.size(); ++c) {
      if (values[c] > 0.0) out.insert(categories[c]);
    }
    return out;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < categories.size(); ++c) {
    if (values[c] > values[best]) best = c;
  }
  out.insert(categories[best]);
  return out;
}

std::set<std::string> predict(const OneVsRest &models, const SparseVector &x,
                              PredictMode mode) {
  if (models.models.empty()) {
    throw std::invalid_argument("predict needs at least one model");
  }
  return labels_from_decisions(models.categories, decision_values(models, x),
                               mode);
}

std::string write_model(const LinearModel &model) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "bias\t%.17g\t%zu\n", model.bias,
                model.weights.size());
  out += buf;
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    if (model.weights[i] == 0.0) continue;
    std::snprintf(buf, sizeof buf, "%zu\t%.17g\n", i, model.weights[i]);
    out += buf;
  }
  return out;
}

LinearModel read_model(std::string_view text) {
  auto lines = split(text, '\n');
  if (lines.empty()) throw ParseError("empty model");
  auto header = split(lines[0], '\t');
  if (header.size() != 3 || header[0] != "bias") {
    throw ParseError("model header must be bias<TAB>value<TAB>dimension");
  }
  LinearModel model;
  try {
    model.bias = std::stod(header[1]);
    model.weights.assign(std::stoul(header[2]), 0.0);
    for (std::size_t l = 1; l < lines.size(); ++l) {
      if (lines[l].empty()) continue;
      auto fields = split(lines[l], '\t');
      if (fields.size() != 2) {
        throw ParseError("model line " + std::to_string(l + 1) +
                         ": expected index<TAB>weight");
      }
      std::size_t index = std::stoul(fields[0]);
      if (index >= model.weights.size()) {
        throw ParseError("model line " + std::to_string(l + 1) +
                         ": index out of range");
      }
      model.weights[index] = std::stod(fields[1]);
    }
  } catch (const std::logic_error &e) {
    throw ParseError(std::string("malformed model: ") + e.what());
  }
  return model;
}

}  // namespace wikitc
