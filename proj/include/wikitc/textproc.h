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

#ifndef WIKITC_TEXTPROC_H_
#define WIKITC_TEXTPROC_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikitc/corpus.h"

namespace wikitc {

struct Token {
  std::string surface;
  int position = 0;

  bool operator==(const Token &) const = default;
};

enum class EntityTag { kNone, kPerson, kLocation, kOrganization };

const char *entity_tag_name(EntityTag tag);  // "PERSON", ... or "NONE"

// Where a token came from: the document itself or knowledge-base
// enrichment. Enrichment tokens are never stemmed.
enum class TokenOrigin { kText, kKnowledge };

struct TaggedToken {
  Token token;
  EntityTag tag = EntityTag::kNone;
  TokenOrigin origin = TokenOrigin::kText;

  bool operator==(const TaggedToken &) const = default;
};

enum class Representation { kT1, kT2, kT3, kT4 };

const char *representation_name(Representation r);
Representation parse_representation(std::string_view name);

struct TaggedDocument {
  std::string id;
  std::vector<TaggedToken> tokens;
  std::set<std::string> labels;
  Representation representation = Representation::kT1;

  bool operator==(const TaggedDocument &) const = default;
};

// True for the characters tokenize() splits on besides whitespace.
bool is_delimiter(char c);

// Splits on whitespace, ASCII control characters and the delimiter set.
std::vector<Token> tokenize(std::string_view text);

using Stoplist = std::unordered_set<std::string>;

// One lowercase word per line; blank lines and '#' comments ignored.
Stoplist parse_stoplist(std::string_view text);
// The bundled SMART-derived list compiled into the library.
const Stoplist &default_stoplist();

std::vector<Token> remove_stopwords(const std::vector<Token> &tokens,
                                    const Stoplist &stoplist);

// Classic Porter (1980) stemmer, following the reference C
// implementation. Input outside [a-z] is returned unchanged.
std::string porter_stem(std::string_view word);

// Assigns entity tags to a token sequence.
class EntityTagger {
 public:
  virtual ~EntityTagger() = default;
  virtual std::vector<TaggedToken> tag(
      const std::vector<Token> &tokens) const = 0;
};

// Multi-word surface forms, matched greedily longest-first. Keys are the
// lowercased tokenization of the surface joined by single spaces, so
// "Clayton E. Cramer" and "clayton e cramer" are the same entry.
class Gazetteer : public EntityTagger {
 public:
  Gazetteer() = default;

  // Lines "surface<TAB>KIND", KIND in {PERSON, LOCATION, ORGANIZATION}.
  static Gazetteer parse(std::string_view text);

  void add(std::string_view surface, EntityTag kind);
  std::size_t size() const { return entries_.size(); }

  std::vector<TaggedToken> tag(
      const std::vector<Token> &tokens) const override;

 private:
  std::unordered_map<std::string, EntityTag> entries_;
  std::size_t max_span_ = 0;
};

inline std::vector<TaggedToken> tag_entities(const std::vector<Token> &tokens,
                                             const EntityTagger &tagger) {
  return tagger.tag(tokens);
}

// Decides which tokens are nouns.
class NounClassifier {
 public:
  virtual ~NounClassifier() = default;
  virtual bool is_noun(const Token &token) const = 0;
};

// Lexicon lookup with a suffix/capitalization fallback for unknown words.
// Lexicon lines are "word" (a noun) or "word<TAB>noun|other".
class NounLexicon : public NounClassifier {
 public:
  NounLexicon() = default;
  static NounLexicon parse(std::string_view text);

  void set(std::string_view word, bool noun);
  bool is_noun(const Token &token) const override;

  // The fallback used for words missing from the lexicon: nominal
  // suffixes, or capitalized anywhere but the document's first token.
  static bool heuristic_noun(const Token &token);

 private:
  std::unordered_map<std::string, bool> entries_;
};

std::vector<Token> filter_nouns(const std::vector<Token> &tokens,
                                const NounClassifier &classifier);

struct TextResources {
  std::shared_ptr<const Stoplist> stoplist;
  std::shared_ptr<const EntityTagger> tagger;
  std::shared_ptr<const NounClassifier> nouns;
};

// T1 = stop words removed; T2 = entity-tagged full text; T3 = T1 nouns
// only; T4 = T3 entity-tagged. Throws ConfigError when a needed resource
// is missing.
TaggedDocument represent(const RawDocument &doc, Representation kind,
                         const TextResources &resources);

}  // namespace wikitc

#endif  // WIKITC_TEXTPROC_H_
