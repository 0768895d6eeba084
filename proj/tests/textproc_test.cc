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

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/test_support.h"
#include "wikitc/textproc.h"

namespace wikitc {
namespace {

using testing::read_data;
using testing::render_tagged;
using testing::sample_post;
using testing::sample_resources;

std::vector<std::string> surfaces(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  for (const auto &t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<Token> toks(const std::vector<std::string> &words) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < words.size(); ++i) out.push_back({words[i], static_cast<int>(i)});
  return out;
}

std::string lower_join(const TaggedDocument &doc) {
  std::string out;
  for (const auto &t : doc.tokens) {
    if (!out.empty()) out += ' ';
    out += to_lower(t.token.surface);
  }
  return out;
}

TEST_CASE("tokenize splits on delimiters") {
  CHECK(surfaces(tokenize("{uunet,pyramid}!optilink!cramer")) ==
        std::vector<std::string>{"uunet", "pyramid", "optilink", "cramer"});
  CHECK(tokenize("").empty());
  CHECK(surfaces(tokenize("He, Reno,")) == std::vector<std::string>{"He", "Reno"});
  CHECK(surfaces(tokenize("a_b c\td\x01" "e")) ==
        std::vector<std::string>{"a", "b", "c", "d", "e"});
  auto t = tokenize("  one -- two ");
  REQUIRE(t.size() == 2);
  CHECK(t[0].position == 0);
  CHECK(t[1].position == 1);
}

TEST_CASE("every delimiter splits") {
  const std::string delims = "{}[](),.;:!?\"'-/\\|<>@#$%^&*_=+~`";
  for (char c : delims) {
    CAPTURE(c);
    CHECK(is_delimiter(c));
    CHECK(surfaces(tokenize(std::string("x") + c + "y")) ==
          std::vector<std::string>{"x", "y"});
  }
  CHECK_FALSE(is_delimiter('a'));
  CHECK_FALSE(is_delimiter('7'));
}

TEST_CASE("stop word removal") {
  Stoplist stop = {"the"};
  CHECK(surfaces(remove_stopwords(toks({"the", "boss"}), stop)) ==
        std::vector<std::string>{"boss"});
  CHECK(remove_stopwords({}, stop).empty());
  auto kept = remove_stopwords(toks({"The", "a", "the"}), stop);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].position == 1);

  auto t1 = remove_stopwords(tokenize(sample_post()), default_stoplist());
  auto words = surfaces(t1);
  REQUIRE(words.size() >= 5);
  std::vector<std::string> head(words.begin(), words.begin() + 5);
  for (auto &w : head) w = to_lower(w);
  CHECK(head == std::vector<std::string>{"reno", "fbi", "got", "wanted", "reminder"});
}

TEST_CASE("bundled stoplist keeps the words the worked example keeps") {
  const Stoplist &s = default_stoplist();
  CHECK(s.count("the"));
  CHECK(s.count("and"));
  CHECK_FALSE(s.count("got"));
  CHECK_FALSE(s.count("of"));
  CHECK_FALSE(s.count("who"));
  CHECK(parse_stoplist("# c\n\nfoo\n bar \n") == Stoplist{"foo", "bar"});
}

TEST_CASE("porter stemmer") {
  CHECK(porter_stem("caresses") == "caress");
  CHECK(porter_stem("relational") == "relat");
  CHECK(porter_stem("a") == "a");
  CHECK(porter_stem("is") == "is");
  CHECK(porter_stem("abc1") == "abc1");
  CHECK(porter_stem("Running") == "Running");
  std::istringstream in(read_data("porter_sample.tsv"));
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    if (line.empty() || line[0] == '#' || tab == std::string::npos) continue;
    CAPTURE(line);
    CHECK(porter_stem(line.substr(0, tab)) == line.substr(tab + 1));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("gazetteer longest match") {
  Gazetteer g;
  g.add("Reno", EntityTag::kPerson);
  g.add("FBI", EntityTag::kOrganization);
  g.add("America", EntityTag::kLocation);
  g.add("clayton e. cramer", EntityTag::kPerson);
  g.add("new york", EntityTag::kLocation);
  g.add("new york times", EntityTag::kOrganization);
  auto tagged = g.tag(tokenize("Reno and the FBI in America, Clayton E. Cramer"));
  std::vector<EntityTag> tags;
  for (const auto &t : tagged) tags.push_back(t.tag);
  using E = EntityTag;
  CHECK(tags == std::vector<E>{E::kPerson, E::kNone, E::kNone, E::kOrganization, E::kNone,
                               E::kLocation, E::kPerson, E::kPerson, E::kPerson});
  auto times = g.tag(tokenize("the New York Times in New York"));
  CHECK(render_tagged(times) ==
        "the <ORGANIZATION>New York Times</ORGANIZATION> in <LOCATION>New York</LOCATION>");
  CHECK(g.tag({}).empty());
}

TEST_CASE("gazetteer file format") {
  Gazetteer g = Gazetteer::parse("reno\tPERSON\n# note\n\nnew york\tLOCATION\n");
  CHECK(g.size() == 2);
  CHECK_THROWS_AS(Gazetteer::parse("reno\tWIZARD\n"), ParseError);
}

TEST_CASE("noun lexicon and fallback") {
  NounLexicon lex = NounLexicon::parse("boss\nwho\tother\nwork\tnoun\n");
  CHECK(lex.is_noun({"boss", 3}));
  CHECK(lex.is_noun({"Boss", 3}));
  CHECK_FALSE(lex.is_noun({"who", 3}));
  CHECK(lex.is_noun({"work", 3}));
  // Unknown words use the heuristic.
  CHECK(lex.is_noun({"government", 3}));
  CHECK(lex.is_noun({"Cramer", 3}));
  CHECK_FALSE(lex.is_noun({"quickly", 3}));
  CHECK(NounLexicon::heuristic_noun({"happiness", 0}));
  CHECK_FALSE(NounLexicon::heuristic_noun({"Why", 0}));
  CHECK(surfaces(filter_nouns(toks({"boss", "who", "quickly"}), lex)) ==
        std::vector<std::string>{"boss"});
}

TEST_CASE("representations of the sample post") {
  RawDocument doc;
  doc.id = "talk.politics.misc/178929";
  doc.body = sample_post();
  doc.labels = {"talk.politics.misc"};
  TextResources r = sample_resources();

  // Hand application of the rules: delimiters split, stop words dropped.
  TaggedDocument t1 = represent(doc, Representation::kT1, r);
  CHECK(lower_join(t1) ==
        "reno fbi got wanted reminder of who boss america thugs who work government "
        "clayton cramer uunet pyramid optilink cramer opinions mine");
  for (const auto &t : t1.tokens) CHECK(t.tag == EntityTag::kNone);
  CHECK(t1.labels == doc.labels);
  CHECK(t1.representation == Representation::kT1);

  TaggedDocument t2 = represent(doc, Representation::kT2, r);
  std::string t2s = render_tagged(t2.tokens);
  CHECK(t2s.find("<PERSON>Reno</PERSON>") != std::string::npos);
  CHECK(t2s.find("<ORGANIZATION>FBI</ORGANIZATION>") != std::string::npos);
  CHECK(t2s.find("<LOCATION>America</LOCATION>") != std::string::npos);
  CHECK(t2s.find("<PERSON>Clayton E Cramer</PERSON>") != std::string::npos);

  TaggedDocument t3 = represent(doc, Representation::kT3, r);
  for (const auto &t : t3.tokens) CHECK(t.tag == EntityTag::kNone);
  // T3 is a subsequence of T1.
  std::size_t j = 0;
  for (const auto &t : t1.tokens) {
    if (j < t3.tokens.size() && t3.tokens[j].token.surface == t.token.surface) ++j;
  }
  CHECK(j == t3.tokens.size());
  CHECK(t3.tokens.size() < t1.tokens.size());

  TaggedDocument t4 = represent(doc, Representation::kT4, r);
  REQUIRE(t4.tokens.size() == t3.tokens.size());
  for (std::size_t i = 0; i < t4.tokens.size(); ++i) {
    CHECK(t4.tokens[i].token.surface == t3.tokens[i].token.surface);
  }
  CHECK(render_tagged(t4.tokens).find("<PERSON>Clayton Cramer</PERSON>") != std::string::npos);
}

TEST_CASE("missing resources") {
  RawDocument doc;
  doc.body = "Reno";
  TextResources none;
  CHECK_THROWS_AS(represent(doc, Representation::kT1, none), ConfigError);
  CHECK_THROWS_AS(represent(doc, Representation::kT2, none), ConfigError);
  TextResources stop_only;
  stop_only.stoplist = std::make_shared<Stoplist>(default_stoplist());
  CHECK_NOTHROW(represent(doc, Representation::kT1, stop_only));
  CHECK_THROWS_AS(represent(doc, Representation::kT3, stop_only), ConfigError);
  CHECK_THROWS_AS(represent(doc, Representation::kT4, stop_only), ConfigError);
  CHECK(parse_representation("T3") == Representation::kT3);
  CHECK(std::string(representation_name(Representation::kT4)) == "T4");
  CHECK_THROWS(parse_representation("T9"));
}

}  // namespace
}  // namespace wikitc
