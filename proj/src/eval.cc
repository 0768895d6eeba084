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

#include "wikitc/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wikitc/corpus.h"

namespace wikitc {

void ContingencyTable::add(const ContingencyTable &other) {
  if (other.categories != categories) {
    throw std::invalid_argument("contingency tables over different categories");
  }
  for (std::size_t c = 0; c < counts.size(); ++c) {
    counts[c].tp += other.counts[c].tp;
    counts[c].fp += other.counts[c].fp;
    counts[c].fn += other.counts[c].fn;
    counts[c].tn += other.counts[c].tn;
  }
  documents += other.documents;
}

ContingencyTable accumulate(const std::vector<std::set<std::string>> &gold,
                            const std::vector<std::set<std::string>> &pred,
                            const std::vector<std::string> &categories) {
  if (gold.size() != pred.size()) {
    throw std::invalid_argument("accumulate: gold and prediction counts differ");
  }
  std::map<std::string, std::size_t> position;
  for (std::size_t c = 0; c < categories.size(); ++c) {
    position.emplace(categories[c], c);
  }
  auto check = [&](const std::set<std::string> &labels, const char *what) {
    for (const auto &label : labels) {
      if (!position.count(label)) {
        throw std::invalid_argument(std::string("accumulate: ") + what +
                                    " label '" + label +
                                    "' is not an evaluated category");
      }
    }
  };
  ContingencyTable ct;
  ct.categories = categories;
  ct.counts.resize(categories.size());
  ct.documents = gold.size();
  for (std::size_t d = 0; d < gold.size(); ++d) {
    check(gold[d], "gold");
    check(pred[d], "predicted");
    for (std::size_t c = 0; c < categories.size(); ++c) {
      bool g = gold[d].count(categories[c]) > 0;
      bool p = pred[d].count(categories[c]) > 0;
      auto &k = ct.counts[c];
      if (g && p) ++k.tp;
      else if (p) ++k.fp;
      else if (g) ++k.fn;
      else ++k.tn;
    }
  }
  return ct;
}

double safe_ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f_measure(double precision, double recall) {
  double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

double micro_f(const ContingencyTable &ct) { return evaluate(ct).micro_f; }

double macro_f(const ContingencyTable &ct) { return evaluate(ct).macro_f; }

MetricReport evaluate(const ContingencyTable &ct) {
  MetricReport report;
  std::uint64_t tp = 0, fp = 0, fn = 0;
  double f_sum = 0.0;
  for (std::size_t c = 0; c < ct.categories.size(); ++c) {
    const auto &k = ct.counts[c];
    tp += k.tp;
    fp += k.fp;
    fn += k.fn;
    CategoryMetrics m;
    m.category = ct.categories[c];
    m.counts = k;
    m.precision = safe_ratio(k.tp, k.tp + k.fp);
    m.recall = safe_ratio(k.tp, k.tp + k.fn);
    m.f = f_measure(m.precision, m.recall);
    f_sum += m.f;
    report.per_category.push_back(std::move(m));
  }
  report.micro_precision = safe_ratio(tp, tp + fp);
  report.micro_recall = safe_ratio(tp, tp + fn);
  report.micro_f = f_measure(report.micro_precision, report.micro_recall);
  report.macro_f =
      ct.categories.empty() ? 0.0 : f_sum / static_cast<double>(ct.categories.size());
  return report;
}

double relative_improvement(double baseline, double value) {
  if (!(baseline > 0.0)) {
    throw std::invalid_argument("relative improvement needs a positive baseline");
  }
  return 100.0 * (value - baseline) / baseline;
}

std::string format_percent(double percent) {
  char digits[64];
  std::snprintf(digits, sizeof digits, "%.2f", std::fabs(percent));
  bool zero = std::string_view(digits) == "0.00";
  return std::string(percent < 0.0 && !zero ? "-" : "+") + digits + "%";
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEpsilon = 1e-15;
  constexpr double kTiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                     a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed(double t, double df) {
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

TTestResult paired_t_test(const std::vector<double> &a,
                          const std::vector<double> &b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("paired t test needs two equal lists of n >= 2");
  }
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  Summary s = summarize(d);
  TTestResult r;
  r.degrees_of_freedom = static_cast<int>(d.size()) - 1;
  if (s.sd == 0.0) {
    if (s.mean == 0.0) {
      r.t = 0.0;
      r.p_two_tailed = 1.0;
    } else {
      r.t = s.mean > 0.0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
      r.p_two_tailed = 0.0;
    }
    return r;
  }
  r.t = s.mean / (s.sd / std::sqrt(static_cast<double>(d.size())));
  r.p_two_tailed = student_t_two_tailed(r.t, r.degrees_of_freedom);
  return r;
}

Summary summarize(const std::vector<double> &values) {
  Summary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return s;
}

FoldOutcome train_and_evaluate(const std::vector<const TaggedDocument *> &train,
                               const std::vector<const TaggedDocument *> &test,
                               const std::vector<std::string> &categories,
                               const PipelineConfig &cfg) {
  if (train.empty()) throw ConfigError("no training documents");
  FoldOutcome out;
  std::vector<std::vector<std::string>> train_terms;
  train_terms.reserve(train.size());
  for (const auto *doc : train) train_terms.push_back(feature_terms(*doc));
  out.vocabulary = Vocabulary::fit_terms(train_terms);

  std::vector<SparseVector> x;
  std::vector<std::set<std::string>> labels;
  x.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    x.push_back(vectorize_terms(train_terms[i], out.vocabulary));
    labels.push_back(train[i]->labels);
  }
  out.models = train_one_vs_rest(x, labels, categories, cfg.svm,
                                 out.vocabulary.size(), cfg.threads);

  std::vector<std::set<std::string>> gold, pred;
  for (const auto *doc : test) {
    gold.push_back(doc->labels);
    if (out.models.models.empty()) {
      pred.emplace_back();
    } else {
      pred.push_back(predict(out.models, vectorize(*doc, out.vocabulary), cfg.mode));
    }
  }
  out.table = accumulate(gold, pred, categories);
  out.report = evaluate(out.table);
  return out;
}

std::vector<MetricReport> CvResult::reports() const {
  std::vector<MetricReport> out;
  for (const auto &f : folds) out.push_back(f.report);
  return out;
}

namespace {

void finish(CvResult &result, const std::vector<std::string> &categories) {
  std::vector<double> micro, macro;
  result.pooled.categories = categories;
  result.pooled.counts.assign(categories.size(), {});
  for (const auto &f : result.folds) {
    micro.push_back(f.report.micro_f);
    macro.push_back(f.report.macro_f);
    result.pooled.add(f.table);
    result.warnings.insert(result.warnings.end(), f.models.warnings.begin(),
                           f.models.warnings.end());
  }
  result.micro_f = summarize(micro);
  result.macro_f = summarize(macro);
}

}  // namespace

CvResult run_cv(const std::vector<TaggedDocument> &docs,
                const std::vector<std::string> &categories,
                const PipelineConfig &cfg, int k, std::uint64_t seed,
                const HygieneHook &hook) {
  std::vector<RawDocument> stubs(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    stubs[i].id = docs[i].id;
    stubs[i].labels = docs[i].labels;
  }
  CvResult result;
  FoldAssignment folds = make_folds(stubs, k, seed, &result.warnings);
  for (int f = 0; f < k; ++f) {
    std::vector<const TaggedDocument *> train, test;
    std::vector<std::string> train_ids;
    for (const auto &doc : docs) {
      if (folds.fold_of(doc.id) == f) {
        test.push_back(&doc);
      } else {
        train.push_back(&doc);
        train_ids.push_back(doc.id);
      }
    }
    if (hook) hook(f, train_ids);
    try {
      result.folds.push_back(train_and_evaluate(train, test, categories, cfg));
    } catch (const std::exception &e) {
      throw std::runtime_error("fold " + std::to_string(f + 1) + " of " +
                               std::to_string(k) + ": " + e.what());
    }
  }
  finish(result, categories);
  return result;
}

CvResult run_fixed_split(const std::vector<TaggedDocument> &train,
                         const std::vector<TaggedDocument> &test,
                         const std::vector<std::string> &categories,
                         const PipelineConfig &cfg) {
  std::vector<const TaggedDocument *> train_ptrs, test_ptrs;
  for (const auto &d : train) train_ptrs.push_back(&d);
  for (const auto &d : test) test_ptrs.push_back(&d);
  CvResult result;
  result.folds.push_back(
      train_and_evaluate(train_ptrs, test_ptrs, categories, cfg));
  finish(result, categories);
  return result;
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string metrics_tsv(const std::string &run_name, const CvResult &result) {
  std::ostringstream out;
  out << "run\tfold\tmicro_p\tmicro_r\tmicro_f\tmacro_f\n";
  for (std::size_t f = 0; f < result.folds.size(); ++f) {
    const auto &r = result.folds[f].report;
    out << run_name << '\t' << f + 1 << '\t' << fixed(r.micro_precision) << '\t'
        << fixed(r.micro_recall) << '\t' << fixed(r.micro_f) << '\t'
        << fixed(r.macro_f) << '\n';
  }
  out << run_name << "\tmean\t-\t-\t" << fixed(result.micro_f.mean) << '\t'
      << fixed(result.macro_f.mean) << '\n';
  out << run_name << "\tsd\t-\t-\t" << fixed(result.micro_f.sd) << '\t'
      << fixed(result.macro_f.sd) << '\n';
  out << '\n' << "run\tcategory\ttp\tfp\tfn\ttn\tprecision\trecall\tf\n";
  for (const auto &m : evaluate(result.pooled).per_category) {
    out << run_name << '\t' << m.category << '\t' << m.counts.tp << '\t'
        << m.counts.fp << '\t' << m.counts.fn << '\t' << m.counts.tn << '\t'
        << fixed(m.precision) << '\t' << fixed(m.recall) << '\t' << fixed(m.f)
        << '\n';
  }
  return out.str();
}

std::string improvement_tsv(const NamedReport &baseline,
                            const std::vector<NamedReport> &runs) {
  char buf[32];
  auto three = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "run\tmicro_f\tmacro_f\tmicro_change\tmacro_change\n";
  out << baseline.name << '\t' << three(baseline.micro_f) << '\t'
      << three(baseline.macro_f) << "\t-\t-\n";
  for (const auto &run : runs) {
    out << run.name << '\t' << three(run.micro_f) << '\t' << three(run.macro_f)
        << '\t'
        << format_percent(relative_improvement(baseline.micro_f, run.micro_f))
        << '\t'
        << format_percent(relative_improvement(baseline.macro_f, run.macro_f))
        << '\n';
  }
  return out.str();
}

}  // namespace wikitc
