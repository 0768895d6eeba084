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

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "wikitc/corpus.h"

namespace wikitc {
namespace {

namespace fs = std::filesystem;

const char *kSnippet =
    R"(<REUTERS LEWISSPLIT="TRAIN" TOPICS="YES" NEWID="1"><TOPICS><D>earn</D></TOPICS><TEXT><TITLE>t</TITLE><BODY>b</BODY></TEXT></REUTERS>)";

RawDocument doc(std::string id, std::set<std::string> labels,
                SplitHint hint = SplitHint::kTrain) {
  RawDocument d;
  d.id = std::move(id);
  d.labels = std::move(labels);
  d.split_hint = hint;
  return d;
}

// Creates a fresh directory under the system temp dir.
fs::path scratch_dir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / ("wikitc_corpus_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path &path, const std::string &text) {
  fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

TEST_CASE("reuters snippet parses into one train document") {
  Corpus c = load_reuters_sgml(kSnippet);
  REQUIRE(c.documents.size() == 1);
  const auto &d = c.documents[0];
  CHECK(d.id == "1");
  CHECK(d.title == "t");
  CHECK(d.body == "b");
  CHECK(d.labels == std::set<std::string>{"earn"});
  CHECK(d.split_hint == SplitHint::kTrain);
}

TEST_CASE("TOPICS=NO and LEWISSPLIT=TEST hints") {
  std::string no = kSnippet;
  no.replace(no.find("TOPICS=\"YES\""), 12, "TOPICS=\"NO\"");
  CHECK(load_reuters_sgml(no).documents.at(0).split_hint == SplitHint::kUnsplit);

  std::string test = kSnippet;
  test.replace(test.find("TRAIN"), 5, "TEST");
  CHECK(load_reuters_sgml(test).documents.at(0).split_hint == SplitHint::kTest);

  std::string other = kSnippet;
  other.replace(other.find("TRAIN"), 5, "NOT-USED");
  CHECK(load_reuters_sgml(other).documents.at(0).split_hint == SplitHint::kUnsplit);
}

TEST_CASE("empty input yields no documents") {
  CHECK(load_reuters_sgml("").documents.empty());
}

TEST_CASE("entities are decoded and unknown ones kept with a warning") {
  std::string s = kSnippet;
  s.replace(s.find("<BODY>b"), 7, "<BODY>a &lt;b&gt; &amp; &#65; &foo; c");
  Corpus c = load_reuters_sgml(s);
  REQUIRE(c.documents.size() == 1);
  CHECK(c.documents[0].body == "a <b> & A &foo; c");
  CHECK(c.warnings.size() == 1);
}

TEST_CASE("malformed nesting names a byte offset") {
  std::string bad =
      R"(<REUTERS LEWISSPLIT="TRAIN" TOPICS="YES" NEWID="1"><TEXT><TITLE>t</BODY></TEXT></REUTERS>)";
  try {
    load_reuters_sgml(bad);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()) == "mismatched </BODY> at byte 65, expected </TITLE>");
  }
}

TEST_CASE("title-only documents keep the title") {
  std::string s = kSnippet;
  s.replace(s.find("<BODY>b</BODY>"), 14, "");
  Corpus c = load_reuters_sgml(s);
  REQUIRE(c.documents.size() == 1);
  CHECK(c.documents[0].title == "t");
  CHECK(c.documents[0].body.empty());
  CHECK(c.documents[0].text().find('t') != std::string::npos);
}

TEST_CASE("SGML round trip preserves fields") {
  std::vector<RawDocument> docs = {
      doc("10", {"earn", "acq"}, SplitHint::kTrain),
      doc("11", {"grain"}, SplitHint::kTest),
      doc("12", {}, SplitHint::kUnsplit),
  };
  docs[0].title = "Profits <up> & more";
  docs[0].body = "Line one.\nLine two with \"quotes\".";
  docs[1].body = "wheat";
  docs[2].title = "no topics";
  Corpus c = load_reuters_sgml(write_reuters_sgml(docs));
  CHECK(c.documents == docs);
  CHECK(c.warnings.empty());
}

TEST_CASE("TSV corpus round trip") {
  std::vector<RawDocument> docs = {doc("a", {"x", "y"}), doc("b", {"y"}, SplitHint::kTest)};
  docs[0].title = "title";
  docs[0].body = "body text";
  docs[1].body = "other";
  CHECK(load_tsv_corpus(write_tsv_corpus(docs)).documents == docs);
}

TEST_CASE("20 newsgroups header stripping and labels") {
  fs::path root = scratch_dir("news");
  write(root / "talk.politics.misc" / "178929", "Subject: x\n\nBody");
  write(root / "sci.med" / "1", "From: a\nSubject: b\n\nline 1\n\nline 2");
  fs::create_directories(root / "alt.atheism");
  Corpus c = load_20newsgroups(root.string());
  REQUIRE(c.documents.size() == 2);
  std::map<std::string, RawDocument> by_id;
  for (const auto &d : c.documents) by_id[d.id] = d;
  const auto &pol = by_id.at("talk.politics.misc/178929");
  CHECK(pol.body == "Body");
  CHECK(pol.labels == std::set<std::string>{"talk.politics.misc"});
  CHECK(by_id.at("sci.med/1").body == "line 1\n\nline 2");
  CHECK(by_id.at("sci.med/1").labels == std::set<std::string>{"sci.med"});
  // The empty category is still reported.
  CHECK(c.categories ==
        std::vector<std::string>{"alt.atheism", "sci.med", "talk.politics.misc"});
  fs::remove_all(root);
}

TEST_CASE("top categories break ties lexicographically") {
  std::vector<RawDocument> docs;
  for (int i = 0; i < 5; ++i) docs.push_back(doc("a" + std::to_string(i), {"a"}));
  for (int i = 0; i < 3; ++i) docs.push_back(doc("b" + std::to_string(i), {"b"}));
  for (int i = 0; i < 5; ++i) docs.push_back(doc("c" + std::to_string(i), {"c"}));
  CHECK(top_categories(docs, 2) == std::vector<std::string>{"a", "c"});
}

TEST_CASE("TopTen needs ten categories") {
  std::vector<RawDocument> docs;
  for (int i = 0; i < 9; ++i) docs.push_back(doc(std::to_string(i), {"cat" + std::to_string(i)}));
  CHECK_THROWS(select_category_subset(docs, SubsetMode::kTopTen));
  docs.push_back(doc("9", {"cat9"}));
  docs.push_back(doc("10", {"cat9"}));
  docs.push_back(doc("11", {"cat0"}));
  auto subset = select_category_subset(docs, SubsetMode::kTopTen);
  CHECK(subset.categories.size() == 10);
}

TEST_CASE("AtLeastOneTrainOneTest excludes train-only categories") {
  std::vector<RawDocument> docs = {
      doc("1", {"a"}, SplitHint::kTrain), doc("2", {"a"}, SplitHint::kTest),
      doc("3", {"b"}, SplitHint::kTrain), doc("4", {"b", "c"}, SplitHint::kTest),
      doc("5", {"c"}, SplitHint::kUnsplit)};
  auto subset = select_category_subset(docs, SubsetMode::kAtLeastOneTrainOneTest);
  CHECK(subset.categories == std::vector<std::string>{"a", "b"});
}

TEST_CASE("admit restricts labels and drops unlabeled documents") {
  std::vector<RawDocument> docs = {doc("1", {"a", "z"}), doc("2", {"z"})};
  auto admitted = admit(docs, {"a"});
  REQUIRE(admitted.size() == 1);
  CHECK(admitted[0].labels == std::set<std::string>{"a"});
}

std::vector<int> fold_sizes(const FoldAssignment &f) {
  std::vector<int> sizes(f.k, 0);
  for (const auto &[id, fold] : f.assignment) ++sizes.at(fold);
  return sizes;
}

TEST_CASE("stratified folds") {
  std::vector<RawDocument> docs;
  for (int i = 0; i < 4; ++i) docs.push_back(doc("x" + std::to_string(i), {"x"}));
  for (int i = 0; i < 4; ++i) docs.push_back(doc("y" + std::to_string(i), {"y"}));
  FoldAssignment f = make_folds(docs, 4, 3);
  REQUIRE(f.assignment.size() == 8);
  for (int fold = 0; fold < 4; ++fold) {
    int x = 0, y = 0;
    for (const auto &d : docs) {
      if (f.fold_of(d.id) != fold) continue;
      (d.labels.count("x") ? x : y)++;
    }
    CHECK(x == 1);
    CHECK(y == 1);
  }
  CHECK(make_folds(docs, 4, 3) == f);
}

TEST_CASE("five documents in four folds") {
  std::vector<RawDocument> docs;
  for (int i = 0; i < 5; ++i) docs.push_back(doc(std::to_string(i), {"a"}));
  auto sizes = fold_sizes(make_folds(docs, 4, 1));
  std::sort(sizes.rbegin(), sizes.rend());
  CHECK(sizes == std::vector<int>{2, 1, 1, 1});
}

TEST_CASE("small strata warn and folds stay disjoint and complete") {
  std::vector<RawDocument> docs;
  for (int i = 0; i < 13; ++i) {
    docs.push_back(doc(std::to_string(i), {i % 3 == 0 ? "a" : (i % 3 == 1 ? "b" : "c")}));
  }
  docs.push_back(doc("rare", {"r", "zz"}));
  Warnings w;
  FoldAssignment f = make_folds(docs, 4, 9, &w);
  CHECK_FALSE(w.empty());
  auto sizes = fold_sizes(f);
  int total = 0;
  for (int s : sizes) total += s;
  CHECK(total == static_cast<int>(docs.size()));
  CHECK(*std::max_element(sizes.begin(), sizes.end()) -
            *std::min_element(sizes.begin(), sizes.end()) <= 1);
  CHECK_THROWS(make_folds(docs, 1, 9));
}

TEST_CASE("ModApte counts on the real corpus" * doctest::skip(std::getenv("WIKITC_REUTERS_DIR") == nullptr)) {
  Corpus c = load_reuters_dir(std::getenv("WIKITC_REUTERS_DIR"));
  std::size_t train = 0, test = 0;
  for (const auto &d : c.documents) {
    if (d.split_hint == SplitHint::kTrain) ++train;
    if (d.split_hint == SplitHint::kTest) ++test;
  }
  CHECK(train == 9603);
  CHECK(test == 3299);
}

}  // namespace
}  // namespace wikitc
