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

#include "wikitc/textproc.h"

#include <algorithm>
#include <cctype>

namespace wikitc {

// Generated from data/stoplist.txt at configure time.
extern const char *const kBundledStoplist;

const char *entity_tag_name(EntityTag tag) {
  switch (tag) {
    case EntityTag::kPerson: return "PERSON";
    case EntityTag::kLocation: return "LOCATION";
    case EntityTag::kOrganization: return "ORGANIZATION";
    case EntityTag::kNone: break;
  }
  return "NONE";
}

const char *representation_name(Representation r) {
  switch (r) {
    case Representation::kT1: return "T1";
    case Representation::kT2: return "T2";
    case Representation::kT3: return "T3";
    case Representation::kT4: return "T4";
  }
  return "T1";
}

Representation parse_representation(std::string_view name) {
  if (name == "T1") return Representation::kT1;
  if (name == "T2") return Representation::kT2;
  if (name == "T3") return Representation::kT3;
  if (name == "T4") return Representation::kT4;
  throw ConfigError("unknown representation '" + std::string(name) + "'");
}

bool is_delimiter(char c) {
  static constexpr std::string_view kDelimiters =
      "{}[](),.;:!?\"'-/\\|<>@#$%^&*_=+~`";
  return kDelimiters.find(c) != std::string_view::npos;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back({std::move(current), static_cast<int>(tokens.size())});
      current.clear();
    }
  };
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f || is_delimiter(c)) {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return tokens;
}

Stoplist parse_stoplist(std::string_view text) {
  Stoplist words;
  for (const auto &line : split(text, '\n')) {
    std::string word = trim(line);
    if (word.empty() || word[0] == '#') continue;
    words.insert(to_lower(word));
  }
  return words;
}

const Stoplist &default_stoplist() {
  static const Stoplist list = parse_stoplist(kBundledStoplist);
  return list;
}

std::vector<Token> remove_stopwords(const std::vector<Token> &tokens,
                                    const Stoplist &stoplist) {
  std::vector<Token> kept;
  for (const auto &token : tokens) {
    if (!stoplist.count(to_lower(token.surface))) kept.push_back(token);
  }
  return kept;
}

namespace {

// Direct port of the reference stemmer's buffer manipulation. b[0..k] is
// the word being stemmed; j marks the end of the stem for suffix tests.
class PorterStemmer {
 public:
  explicit PorterStemmer(std::string word)
      : b_(std::move(word)), k_(static_cast<int>(b_.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, k_ + 1);
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !cons(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_consonant(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, last consonant not w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    int length = static_cast<int>(s.size());
    if (length > k_ + 1) return false;
    if (std::string_view(b_).substr(k_ - length + 1, length) != s) {
      return false;
    }
    j_ = k_ - length;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(j_ + 1, k_ - j_, s);
    k_ = j_ + static_cast<int>(s.size());
    b_.resize(k_ + 1);
  }

  void replace_if_measure(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  void step1ab() {
    if (b_[k_] == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (b_[k_ - 1] != 's') {
        --k_;
      }
      b_.resize(k_ + 1);
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      b_.resize(k_ + 1);
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_consonant(k_)) {
        --k_;
        char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else if (m() == 1 && cvc(k_)) {
        set_to("e");
      }
    }
    b_.resize(k_ + 1);
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
  }

  // Tries each (suffix, replacement) pair in order; the first suffix that
  // matches ends the step whether or not the measure allows replacing.
  void try_rules(
      std::initializer_list<std::pair<std::string_view, std::string_view>>
          rules) {
    for (const auto &[suffix, replacement] : rules) {
      if (ends(suffix)) {
        replace_if_measure(replacement);
        return;
      }
    }
  }

  void step2() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case 'a': try_rules({{"ational", "ate"}, {"tional", "tion"}}); break;
      case 'c': try_rules({{"enci", "ence"}, {"anci", "ance"}}); break;
      case 'e': try_rules({{"izer", "ize"}}); break;
      case 'l':
        try_rules({{"bli", "ble"},
                   {"alli", "al"},
                   {"entli", "ent"},
                   {"eli", "e"},
                   {"ousli", "ous"}});
        break;
      case 'o':
        try_rules({{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}});
        break;
      case 's':
        try_rules({{"alism", "al"},
                   {"iveness", "ive"},
                   {"fulness", "ful"},
                   {"ousness", "ous"}});
        break;
      case 't':
        try_rules({{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}});
        break;
      case 'g': try_rules({{"logi", "log"}}); break;
      default: break;
    }
  }

  void step3() {
    switch (b_[k_]) {
      case 'e':
        try_rules({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}});
        break;
      case 'i': try_rules({{"iciti", "ic"}}); break;
      case 'l': try_rules({{"ical", "ic"}, {"ful", ""}}); break;
      case 's': try_rules({{"ness", ""}}); break;
      default: break;
    }
  }

  void step4() {
    if (k_ < 1) return;
    bool matched = false;
    switch (b_[k_ - 1]) {
      case 'a': matched = ends("al"); break;
      case 'c': matched = ends("ance") || ends("ence"); break;
      case 'e': matched = ends("er"); break;
      case 'i': matched = ends("ic"); break;
      case 'l': matched = ends("able") || ends("ible"); break;
      case 'n':
        matched = ends("ant") || ends("ement") || ends("ment") || ends("ent");
        break;
      case 'o':
        matched = (ends("ion") && j_ >= 0 &&
                   (b_[j_] == 's' || b_[j_] == 't')) ||
                  ends("ou");
        break;
      case 's': matched = ends("ism"); break;
      case 't': matched = ends("ate") || ends("iti"); break;
      case 'u': matched = ends("ous"); break;
      case 'v': matched = ends("ive"); break;
      case 'z': matched = ends("ize"); break;
      default: break;
    }
    if (matched && m() > 1) {
      k_ = j_;
      b_.resize(k_ + 1);
    }
  }

  void step5() {
    j_ = k_;
    int k = k_;
    if (b_[k] == 'e') {
      int a = m();
      if (a > 1 || (a == 1 && !cvc(k - 1))) --k;
    }
    if (b_[k] == 'l' && double_consonant(k) && m() > 1) --k;
    k_ = k;
    b_.resize(k_ + 1);
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.empty()) return std::string(word);
  for (char c : word) {
    if (c < 'a' || c > 'z') return std::string(word);
  }
  return PorterStemmer(std::string(word)).run();
}

Gazetteer Gazetteer::parse(std::string_view text) {
  Gazetteer gazetteer;
  std::size_t line_no = 0;
  for (const auto &raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw ParseError("gazetteer line " + std::to_string(line_no) +
                       ": expected surface<TAB>KIND");
    }
    std::string kind = trim(fields[1]);
    EntityTag tag;
    if (kind == "PERSON") {
      tag = EntityTag::kPerson;
    } else if (kind == "LOCATION") {
      tag = EntityTag::kLocation;
    } else if (kind == "ORGANIZATION") {
      tag = EntityTag::kOrganization;
    } else {
      throw ParseError("gazetteer line " + std::to_string(line_no) +
                       ": unknown kind '" + kind + "'");
    }
    gazetteer.add(fields[0], tag);
  }
  return gazetteer;
}

void Gazetteer::add(std::string_view surface, EntityTag kind) {
  std::vector<std::string> parts;
  for (const auto &token : tokenize(surface)) {
    parts.push_back(to_lower(token.surface));
  }
  if (parts.empty()) return;
  max_span_ = std::max(max_span_, parts.size());
  entries_[join(parts, " ")] = kind;
}

std::vector<TaggedToken> Gazetteer::tag(
    const std::vector<Token> &tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto &token : tokens) out.push_back({token});
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t longest = std::min(max_span_, tokens.size() - i);
    bool matched = false;
    for (std::size_t span = longest; span >= 1; --span) {
      std::string key = to_lower(tokens[i].surface);
      for (std::size_t s = 1; s < span; ++s) {
        key += ' ';
        key += to_lower(tokens[i + s].surface);
      }
      auto it = entries_.find(key);
      if (it != entries_.end()) {
        for (std::size_t s = 0; s < span; ++s) out[i + s].tag = it->second;
        i += span;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return out;
}

NounLexicon NounLexicon::parse(std::string_view text) {
  NounLexicon lexicon;
  std::size_t line_no = 0;
  for (const auto &raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    bool noun = true;
    if (fields.size() == 2) {
      std::string kind = trim(fields[1]);
      if (kind == "other") {
        noun = false;
      } else if (kind != "noun") {
        throw ParseError("lexicon line " + std::to_string(line_no) +
                         ": expected 'noun' or 'other'");
      }
    } else if (fields.size() > 2) {
      throw ParseError("lexicon line " + std::to_string(line_no) +
                       ": too many fields");
    }
    lexicon.set(trim(fields[0]), noun);
  }
  return lexicon;
}

void NounLexicon::set(std::string_view word, bool noun) {
  entries_[to_lower(word)] = noun;
}

bool NounLexicon::is_noun(const Token &token) const {
  auto it = entries_.find(to_lower(token.surface));
  if (it != entries_.end()) return it->second;
  return heuristic_noun(token);
}

bool NounLexicon::heuristic_noun(const Token &token) {
  const std::string word = to_lower(token.surface);
  static constexpr std::string_view kSuffixes[] = {
      "tion", "ment", "ness", "ity", "er", "or", "ism"};
  for (std::string_view suffix : kSuffixes) {
    if (word.size() >= suffix.size() + 2 && word.ends_with(suffix)) {
      return true;
    }
  }
  return token.position > 0 && !token.surface.empty() &&
         std::isupper(static_cast<unsigned char>(token.surface[0]));
}

std::vector<Token> filter_nouns(const std::vector<Token> &tokens,
                                const NounClassifier &classifier) {
  std::vector<Token> kept;
  for (const auto &token : tokens) {
    if (classifier.is_noun(token)) kept.push_back(token);
  }
  return kept;
}

TaggedDocument represent(const RawDocument &doc, Representation kind,
                         const TextResources &resources) {
  TaggedDocument out;
  out.id = doc.id;
  out.labels = doc.labels;
  out.representation = kind;
  auto tokens = tokenize(doc.text());

  bool needs_stoplist = kind != Representation::kT2;
  bool needs_tagger = kind == Representation::kT2 || kind == Representation::kT4;
  bool needs_nouns = kind == Representation::kT3 || kind == Representation::kT4;
  if (needs_stoplist && !resources.stoplist) {
    throw ConfigError(std::string(representation_name(kind)) +
                      " needs a stoplist");
  }
  if (needs_tagger && !resources.tagger) {
    throw ConfigError(std::string(representation_name(kind)) +
                      " needs an entity tagger (gazetteer)");
  }
  if (needs_nouns && !resources.nouns) {
    throw ConfigError(std::string(representation_name(kind)) +
                      " needs a noun lexicon");
  }

  if (needs_stoplist) tokens = remove_stopwords(tokens, *resources.stoplist);
  if (needs_nouns) tokens = filter_nouns(tokens, *resources.nouns);
  if (needs_tagger) {
    out.tokens = tag_entities(tokens, *resources.tagger);
  } else {
    for (auto &token : tokens) out.tokens.push_back({std::move(token)});
  }
  return out;
}

}  // namespace wikitc
