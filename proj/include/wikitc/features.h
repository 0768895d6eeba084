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

#ifndef WIKITC_FEATURES_H_
#define WIKITC_FEATURES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikitc/textproc.h"

namespace wikitc {

struct SparseEntry {
  std::uint32_t index;
  double weight;

  bool operator==(const SparseEntry &) const = default;
};

// Indices strictly increasing; L2 norm 1 unless empty.
struct SparseVector {
  std::vector<SparseEntry> entries;

  bool empty() const { return entries.empty(); }
  double dot(const std::vector<double> &dense) const;
  double norm() const;

  bool operator==(const SparseVector &) const = default;
};

// Classifier-side terms of a document: document tokens are lowercased
// and Porter-stemmed, knowledge tokens only lowercased.
std::vector<std::string> feature_terms(const TaggedDocument &doc);

class Vocabulary {
 public:
  Vocabulary() = default;

  // Indices follow sorted term order. Throws ConfigError on an empty
  // corpus.
  static Vocabulary fit(const std::vector<TaggedDocument> &train_docs);
  static Vocabulary fit_terms(
      const std::vector<std::vector<std::string>> &train_terms);

  std::size_t size() const { return terms_.size(); }
  std::size_t corpus_size() const { return corpus_size_; }
  // -1 when absent.
  std::int64_t index_of(std::string_view term) const;
  std::uint32_t document_frequency(std::string_view term) const;
  const std::string &term(std::size_t index) const { return terms_[index]; }

  // ln((1 + N) / (1 + df)) + 1
  double idf(std::size_t index) const;

  // Lines "term<TAB>index<TAB>df", preceded by "#documents<TAB>N".
  std::string dump() const;
  static Vocabulary load(std::string_view text);

  bool operator==(const Vocabulary &other) const {
    return terms_ == other.terms_ && df_ == other.df_ &&
           corpus_size_ == other.corpus_size_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint32_t> df_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
  std::size_t corpus_size_ = 0;
};

// tf * idf per in-vocabulary term, L2-normalized. All-OOV documents map to
// the empty vector.
SparseVector vectorize_terms(const std::vector<std::string> &terms,
                             const Vocabulary &vocab);
SparseVector vectorize(const TaggedDocument &doc, const Vocabulary &vocab);

}  // namespace wikitc

#endif  // WIKITC_FEATURES_H_
