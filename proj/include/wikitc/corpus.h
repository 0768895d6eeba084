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

#ifndef WIKITC_CORPUS_H_
#define WIKITC_CORPUS_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wikitc/common.h"

namespace wikitc {

enum class SplitHint { kTrain, kTest, kUnsplit };

struct RawDocument {
  std::string id;
  std::string title;
  std::string body;
  std::set<std::string> labels;
  SplitHint split_hint = SplitHint::kUnsplit;

  // Title and body joined; this is the text the representations see.
  std::string text() const;

  bool operator==(const RawDocument &) const = default;
};

struct Corpus {
  std::vector<RawDocument> documents;
  // Every category observed, including ones with no documents.
  std::vector<std::string> categories;
  Warnings warnings;
  std::size_t skipped = 0;
};

// Parses Reuters-21578 SGML (one reut2-NNN.sgm file or a concatenation).
// Throws ParseError naming the byte offset on malformed nesting.
Corpus load_reuters_sgml(std::string_view bytes);

// Loads every reut2-*.sgm under dir in file-name order.
Corpus load_reuters_dir(const std::string &dir);

// Serializes documents back into Reuters SGML. Documents with kTrain/kTest
// hints are written with TOPICS="YES"; kUnsplit with TOPICS="NO".
std::string write_reuters_sgml(const std::vector<RawDocument> &docs);

// Two-level tree: root/<category>/<document file>.
Corpus load_20newsgroups(const std::string &root);

// Tab-separated corpus: id, labels ("|"-separated), split (train, test or
// unsplit), title, body. Used for custom and synthetic datasets.
Corpus load_tsv_corpus(std::string_view text);
std::string write_tsv_corpus(const std::vector<RawDocument> &docs);

enum class SubsetMode { kTopTen, kAtLeastOneTrainOneTest };

struct CategorySubset {
  SubsetMode mode = SubsetMode::kTopTen;
  std::vector<std::string> categories;  // lexicographic
};

CategorySubset select_category_subset(const std::vector<RawDocument> &docs,
                                      SubsetMode mode);

// The n categories with the most training documents, ties broken
// lexicographically. Corpora without train hints count every document.
std::vector<std::string> top_categories(const std::vector<RawDocument> &docs,
                                        std::size_t n);

// Restricts labels to the given categories and drops documents left
// without labels.
std::vector<RawDocument> admit(const std::vector<RawDocument> &docs,
                               const std::vector<std::string> &categories);

struct FoldAssignment {
  int k = 0;
  std::map<std::string, int> assignment;

  int fold_of(const std::string &id) const;
  bool operator==(const FoldAssignment &) const = default;
};

// Stratified by the lexicographically smallest label. Within a stratum the
// documents are shuffled with the seed and dealt round-robin; the dealing
// position carries over between strata.
FoldAssignment make_folds(const std::vector<RawDocument> &docs, int k,
                          std::uint64_t seed, Warnings *warnings = nullptr);

}  // namespace wikitc

#endif  // WIKITC_CORPUS_H_
