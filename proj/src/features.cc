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

#include "wikitc/features.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace wikitc {

double SparseVector::dot(const std::vector<double> &dense) const {
  double sum = 0.0;
  for (const auto &e : entries) {
    if (e.index < dense.size()) sum += e.weight * dense[e.index];
  }
  return sum;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto &e : entries) sum += e.weight * e.weight;
  return std::sqrt(sum);
}

std::vector<std::string> feature_terms(const TaggedDocument &doc) {
  std::vector<std::string> terms;
  terms.reserve(doc.tokens.size());
  for (const auto &t : doc.tokens) {
    std::string lowered = to_lower(t.token.surface);
    if (t.origin == TokenOrigin::kText) {
      terms.push_back(porter_stem(lowered));
    } else {
      terms.push_back(std::move(lowered));
    }
  }
  return terms;
}

Vocabulary Vocabulary::fit(const std::vector<TaggedDocument> &train_docs) {
  std::vector<std::vector<std::string>> terms;
  terms.reserve(train_docs.size());
  for (const auto &doc : train_docs) terms.push_back(feature_terms(doc));
  return fit_terms(terms);
}

Vocabulary Vocabulary::fit_terms(
    const std::vector<std::vector<std::string>> &train_terms) {
  if (train_terms.empty()) {
    throw ConfigError("cannot fit a vocabulary on an empty corpus");
  }
  std::map<std::string, std::uint32_t> df;
  for (const auto &doc : train_terms) {
    std::set<std::string_view> distinct(doc.begin(), doc.end());
    for (auto term : distinct) ++df[std::string(term)];
  }
  Vocabulary vocab;
  vocab.corpus_size_ = train_terms.size();
  for (auto &[term, count] : df) {
    vocab.lookup_.emplace(term, static_cast<std::uint32_t>(vocab.terms_.size()));
    vocab.terms_.push_back(term);
    vocab.df_.push_back(count);
  }
  return vocab;
}

std::int64_t Vocabulary::index_of(std::string_view term) const {
  auto it = lookup_.find(std::string(term));
  return it == lookup_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::uint32_t Vocabulary::document_frequency(std::string_view term) const {
  auto i = index_of(term);
  return i < 0 ? 0 : df_[static_cast<std::size_t>(i)];
}

double Vocabulary::idf(std::size_t index) const {
  return std::log((1.0 + static_cast<double>(corpus_size_)) /
                  (1.0 + static_cast<double>(df_[index]))) +
         1.0;
}

std::string Vocabulary::dump() const {
  std::ostringstream out;
  out << "#documents\t" << corpus_size_ << '\n';
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out << terms_[i] << '\t' << i << '\t' << df_[i] << '\n';
  }
  return out.str();
}

Vocabulary Vocabulary::load(std::string_view text) {
  Vocabulary vocab;
  std::size_t line_no = 0;
  auto parse_number = [&](const std::string &s) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": bad number '" + s + "'");
    }
    return value;
  };
  for (const auto &line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() == 2 && fields[0] == "#documents") {
      vocab.corpus_size_ = parse_number(fields[1]);
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": expected term<TAB>index<TAB>df");
    }
    if (parse_number(fields[1]) != vocab.terms_.size()) {
      throw ParseError("vocabulary line " + std::to_string(line_no) +
                       ": indices must be dense and in order");
    }
    vocab.lookup_.emplace(fields[0],
                          static_cast<std::uint32_t>(vocab.terms_.size()));
    vocab.terms_.push_back(fields[0]);
    vocab.df_.push_back(static_cast<std::uint32_t>(parse_number(fields[2])));
  }
  return vocab;
}

SparseVector vectorize_terms(const std::vector<std::string> &terms,
                             const Vocabulary &vocab) {
  std::map<std::uint32_t, double> tf;
  for (const auto &term : terms) {
    auto i = vocab.index_of(term);
    if (i >= 0) tf[static_cast<std::uint32_t>(i)] += 1.0;
  }
  SparseVector v;
  double sum = 0.0;
  for (const auto &[index, count] : tf) {
    double w = count * vocab.idf(index);
    v.entries.push_back({index, w});
    sum += w * w;
  }
  if (sum > 0.0) {
    const double norm = std::sqrt(sum);
    for (auto &e : v.entries) e.weight /= norm;
  }
  return v;
}

SparseVector vectorize(const TaggedDocument &doc, const Vocabulary &vocab) {
  return vectorize_terms(feature_terms(doc), vocab);
}

}  // namespace wikitc
