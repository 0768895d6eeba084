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

#include "wikitc/corpus.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace wikitc {

namespace fs = std::filesystem;

std::string RawDocument::text() const {
  if (title.empty()) return body;
  if (body.empty()) return title;
  return title + "\n" + body;
}

namespace {

// Decodes &lt; &gt; &amp; &quot; &apos; and numeric references. Unknown
// entities are copied through unchanged.
std::string decode_entities(std::string_view s, std::size_t base_offset,
                            Warnings &warnings) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += s[i];
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    bool decoded = true;
    if (name == "lt") {
      out += '<';
    } else if (name == "gt") {
      out += '>';
    } else if (name == "amp") {
      out += '&';
    } else if (name == "quot") {
      out += '"';
    } else if (name == "apos") {
      out += '\'';
    } else if (name.size() >= 2 && name[0] == '#') {
      long code = -1;
      try {
        std::size_t used = 0;
        std::string digits(name.substr(1));
        if (digits[0] == 'x' || digits[0] == 'X') {
          code = std::stol(digits.substr(1), &used, 16);
          ++used;
        } else {
          code = std::stol(digits, &used, 10);
        }
        if (used != digits.size()) code = -1;
      } catch (const std::exception &) {
        code = -1;
      }
      if (code >= 0 && code < 256) {
        out += static_cast<char>(code);
      } else {
        decoded = false;
      }
    } else {
      decoded = false;
    }
    if (!decoded) {
      warnings.push_back("unknown entity &" + std::string(name) +
                         "; at byte " + std::to_string(base_offset + i));
      out.append(s.substr(i, semi - i + 1));
    }
    i = semi;
  }
  return out;
}

std::string escape_sgml(std::string_view s, bool attribute) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default: out += c;
    }
  }
  return out;
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
         c == '_' || c == '.';
}

struct Tag {
  std::string name;  // upper case
  std::map<std::string, std::string> attributes;
};

// State for the document currently being assembled.
struct ReutersBuilder {
  RawDocument doc;
  std::string topics_attr;
  std::string lewis_split;
  std::string direct_text;
  std::string current_text;
  bool in_topics = false;
};

}  // namespace

Corpus load_reuters_sgml(std::string_view bytes) {
  Corpus corpus;
  std::set<std::string> seen_categories;
  std::vector<std::pair<std::string, std::size_t>> stack;
  std::optional<ReutersBuilder> current;
  std::string text;  // character data since the last tag
  std::size_t text_start = 0;

  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    char c = bytes[i];
    bool is_tag = false;
    if (c == '<' && i + 1 < n) {
      char next = bytes[i + 1];
      is_tag = next == '/' || next == '!' ||
               std::isalpha(static_cast<unsigned char>(next));
    }
    if (!is_tag) {
      if (text.empty()) text_start = i;
      text += c;
      ++i;
      continue;
    }
    std::size_t tag_start = i;
    std::size_t close = bytes.find('>', i);
    if (close == std::string_view::npos) {
      throw ParseError("unterminated tag at byte " + std::to_string(i));
    }
    std::string_view inner = bytes.substr(i + 1, close - i - 1);
    i = close + 1;
    if (inner[0] == '!') continue;  // DOCTYPE and comments

    // Character data belongs to the innermost element; decode it now.
    if (current && !text.empty()) {
      current->current_text +=
          decode_entities(text, text_start, corpus.warnings);
    }
    text.clear();

    if (inner[0] == '/') {
      std::string name = trim(inner.substr(1));
      std::transform(name.begin(), name.end(), name.begin(), ::toupper);
      if (stack.empty() || stack.back().first != name) {
        std::string expected =
            stack.empty() ? std::string("no open element")
                          : "</" + stack.back().first + ">";
        throw ParseError("mismatched </" + name + "> at byte " +
                         std::to_string(tag_start) + ", expected " + expected);
      }
      stack.pop_back();
      if (!current) continue;
      std::string content = std::move(current->current_text);
      current->current_text.clear();
      if (name == "D") {
        if (current->in_topics && !content.empty()) {
          current->doc.labels.insert(content);
        }
      } else if (name == "TOPICS") {
        current->in_topics = false;
      } else if (name == "TITLE") {
        current->doc.title = content;
      } else if (name == "BODY") {
        current->doc.body = content;
      } else if (name == "TEXT") {
        current->direct_text += content;
        if (current->doc.title.empty() && current->doc.body.empty()) {
          current->doc.body = trim(current->direct_text);
        }
      } else if (name == "REUTERS") {
        RawDocument &doc = current->doc;
        if (current->topics_attr == "YES" &&
            current->lewis_split == "TRAIN") {
          doc.split_hint = SplitHint::kTrain;
        } else if (current->topics_attr == "YES" &&
                   current->lewis_split == "TEST") {
          doc.split_hint = SplitHint::kTest;
        } else {
          doc.split_hint = SplitHint::kUnsplit;
        }
        for (const auto &label : doc.labels) seen_categories.insert(label);
        corpus.documents.push_back(std::move(doc));
        current.reset();
      }
      continue;
    }

    // Opening tag: NAME attr="value" ...
    std::size_t p = 0;
    while (p < inner.size() && is_name_char(inner[p])) ++p;
    Tag tag;
    tag.name = std::string(inner.substr(0, p));
    std::transform(tag.name.begin(), tag.name.end(), tag.name.begin(),
                   ::toupper);
    while (p < inner.size()) {
      while (p < inner.size() &&
             std::isspace(static_cast<unsigned char>(inner[p]))) {
        ++p;
      }
      std::size_t key_start = p;
      while (p < inner.size() && is_name_char(inner[p])) ++p;
      if (p == key_start) {
        if (p < inner.size()) ++p;
        continue;
      }
      std::string key(inner.substr(key_start, p - key_start));
      std::transform(key.begin(), key.end(), key.begin(), ::toupper);
      std::string value;
      if (p < inner.size() && inner[p] == '=') {
        ++p;
        if (p < inner.size() && inner[p] == '"') {
          std::size_t end = inner.find('"', p + 1);
          if (end == std::string_view::npos) {
            throw ParseError("unterminated attribute at byte " +
                             std::to_string(tag_start));
          }
          value = decode_entities(inner.substr(p + 1, end - p - 1),
                                  tag_start, corpus.warnings);
          p = end + 1;
        } else {
          std::size_t vs = p;
          while (p < inner.size() &&
                 !std::isspace(static_cast<unsigned char>(inner[p]))) {
            ++p;
          }
          value = std::string(inner.substr(vs, p - vs));
        }
      }
      tag.attributes[key] = value;
    }

    if (tag.name == "REUTERS") {
      if (current) {
        throw ParseError("nested <REUTERS> at byte " +
                         std::to_string(tag_start));
      }
      current.emplace();
      current->doc.id = tag.attributes["NEWID"];
      current->topics_attr = tag.attributes["TOPICS"];
      current->lewis_split = tag.attributes["LEWISSPLIT"];
    } else if (current) {
      if (tag.name == "TOPICS") current->in_topics = true;
      // Only character data of the element being closed is kept, so text
      // that precedes a child is moved aside here.
      if (!stack.empty() && stack.back().first == "TEXT") {
        current->direct_text += current->current_text;
      }
      current->current_text.clear();
    }
    stack.emplace_back(tag.name, tag_start);
  }
  if (!stack.empty()) {
    throw ParseError("unclosed <" + stack.back().first + "> opened at byte " +
                     std::to_string(stack.back().second));
  }
  corpus.categories.assign(seen_categories.begin(), seen_categories.end());
  return corpus;
}

Corpus load_reuters_dir(const std::string &dir) {
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("reut2-", 0) == 0 &&
        entry.path().extension() == ".sgm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  Corpus all;
  std::set<std::string> categories;
  for (const auto &file : files) {
    Corpus part;
    try {
      part = load_reuters_sgml(read_file(file.string()));
    } catch (const ParseError &e) {
      throw ParseError(file.filename().string() + ": " + e.what());
    }
    for (auto &doc : part.documents) all.documents.push_back(std::move(doc));
    for (auto &w : part.warnings) {
      all.warnings.push_back(file.filename().string() + ": " + w);
    }
    categories.insert(part.categories.begin(), part.categories.end());
  }
  all.categories.assign(categories.begin(), categories.end());
  return all;
}

std::string write_reuters_sgml(const std::vector<RawDocument> &docs) {
  std::ostringstream out;
  for (const auto &doc : docs) {
    const char *split = "NOT-USED";
    const char *topics = "NO";
    if (doc.split_hint == SplitHint::kTrain) {
      split = "TRAIN";
      topics = "YES";
    } else if (doc.split_hint == SplitHint::kTest) {
      split = "TEST";
      topics = "YES";
    }
    out << "<REUTERS TOPICS=\"" << topics << "\" LEWISSPLIT=\"" << split
        << "\" NEWID=\"" << escape_sgml(doc.id, true) << "\">\n<TOPICS>";
    for (const auto &label : doc.labels) {
      out << "<D>" << escape_sgml(label, false) << "</D>";
    }
    out << "</TOPICS>\n<TEXT><TITLE>" << escape_sgml(doc.title, false)
        << "</TITLE><BODY>" << escape_sgml(doc.body, false)
        << "</BODY></TEXT>\n</REUTERS>\n";
  }
  return out.str();
}

Corpus load_20newsgroups(const std::string &root) {
  Corpus corpus;
  std::vector<fs::path> categories;
  for (const auto &entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) categories.push_back(entry.path());
  }
  std::sort(categories.begin(), categories.end());
  for (const auto &dir : categories) {
    const std::string category = dir.filename().string();
    corpus.categories.push_back(category);
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
      if (!entry.is_directory()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto &file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) {
        corpus.warnings.push_back("unreadable file " + file.string());
        ++corpus.skipped;
        continue;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      std::string content = ss.str();
      if (in.bad()) {
        corpus.warnings.push_back("read error in " + file.string());
        ++corpus.skipped;
        continue;
      }
      // Headers end at the first blank line.
      std::string body = content;
      for (std::string_view sep : {"\r\n\r\n", "\n\n"}) {
        std::size_t pos = content.find(sep);
        if (pos != std::string::npos) {
          std::size_t alt = content.find(sep == "\n\n" ? "\r\n\r\n" : "\n\n");
          if (alt != std::string::npos && alt < pos) continue;
          body = content.substr(pos + sep.size());
          break;
        }
      }
      RawDocument doc;
      doc.id = category + "/" + file.filename().string();
      doc.body = std::move(body);
      doc.labels.insert(category);
      corpus.documents.push_back(std::move(doc));
    }
  }
  return corpus;
}

namespace {

std::string escape_tsv(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_tsv(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      char n = s[++i];
      out += n == 't' ? '\t' : n == 'n' ? '\n' : n == 'r' ? '\r' : n;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

Corpus load_tsv_corpus(std::string_view text) {
  Corpus corpus;
  std::set<std::string> categories;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  for (const auto &raw_line : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw_line;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 5) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 5 tab-separated fields, got " +
                       std::to_string(fields.size()));
    }
    RawDocument doc;
    doc.id = fields[0];
    if (!ids.insert(doc.id).second) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": duplicate id " + doc.id);
    }
    if (!fields[1].empty()) {
      for (auto &label : split(fields[1], '|')) {
        if (!label.empty()) doc.labels.insert(label);
      }
    }
    if (fields[2] == "train") {
      doc.split_hint = SplitHint::kTrain;
    } else if (fields[2] == "test") {
      doc.split_hint = SplitHint::kTest;
    } else if (fields[2] == "unsplit" || fields[2].empty()) {
      doc.split_hint = SplitHint::kUnsplit;
    } else {
      throw ParseError("line " + std::to_string(line_no) +
                       ": unknown split '" + fields[2] + "'");
    }
    doc.title = unescape_tsv(fields[3]);
    doc.body = unescape_tsv(fields[4]);
    categories.insert(doc.labels.begin(), doc.labels.end());
    corpus.documents.push_back(std::move(doc));
  }
  corpus.categories.assign(categories.begin(), categories.end());
  return corpus;
}

std::string write_tsv_corpus(const std::vector<RawDocument> &docs) {
  std::ostringstream out;
  for (const auto &doc : docs) {
    std::vector<std::string> labels(doc.labels.begin(), doc.labels.end());
    const char *split = doc.split_hint == SplitHint::kTrain  ? "train"
                        : doc.split_hint == SplitHint::kTest ? "test"
                                                             : "unsplit";
    out << doc.id << '\t' << join(labels, "|") << '\t' << split << '\t'
        << escape_tsv(doc.title) << '\t' << escape_tsv(doc.body) << '\n';
  }
  return out.str();
}

std::vector<std::string> top_categories(const std::vector<RawDocument> &docs,
                                        std::size_t n) {
  bool any_train = std::any_of(docs.begin(), docs.end(), [](const auto &d) {
    return d.split_hint == SplitHint::kTrain;
  });
  std::map<std::string, std::size_t> counts;
  for (const auto &doc : docs) {
    if (any_train && doc.split_hint != SplitHint::kTrain) continue;
    for (const auto &label : doc.labels) ++counts[label];
  }
  if (counts.size() < n) {
    throw ConfigError("requested top " + std::to_string(n) +
                      " categories but only " + std::to_string(counts.size()) +
                      " are available");
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(),
                                                          counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &a, const auto &b) {
                     return a.second > b.second;
                   });
  std::vector<std::string> top;
  for (std::size_t i = 0; i < n; ++i) top.push_back(ranked[i].first);
  std::sort(top.begin(), top.end());
  return top;
}

CategorySubset select_category_subset(const std::vector<RawDocument> &docs,
                                      SubsetMode mode) {
  CategorySubset subset;
  subset.mode = mode;
  if (mode == SubsetMode::kTopTen) {
    subset.categories = top_categories(docs, 10);
    return subset;
  }
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (const auto &doc : docs) {
    for (const auto &label : doc.labels) {
      if (doc.split_hint == SplitHint::kTrain) ++counts[label].first;
      if (doc.split_hint == SplitHint::kTest) ++counts[label].second;
    }
  }
  for (const auto &[label, c] : counts) {
    if (c.first > 0 && c.second > 0) subset.categories.push_back(label);
  }
  return subset;
}

std::vector<RawDocument> admit(const std::vector<RawDocument> &docs,
                               const std::vector<std::string> &categories) {
  std::set<std::string> keep(categories.begin(), categories.end());
  std::vector<RawDocument> out;
  for (const auto &doc : docs) {
    RawDocument copy = doc;
    std::erase_if(copy.labels,
                  [&](const std::string &l) { return !keep.count(l); });
    if (!copy.labels.empty()) out.push_back(std::move(copy));
  }
  return out;
}

int FoldAssignment::fold_of(const std::string &id) const {
  auto it = assignment.find(id);
  if (it == assignment.end()) {
    throw std::out_of_range("document " + id + " has no fold");
  }
  return it->second;
}

FoldAssignment make_folds(const std::vector<RawDocument> &docs, int k,
                          std::uint64_t seed, Warnings *warnings) {
  if (k < 2) throw ConfigError("fold count must be at least 2");
  std::map<std::string, std::vector<std::string>> strata;
  for (const auto &doc : docs) {
    if (doc.labels.empty()) {
      throw ConfigError("document " + doc.id + " has no label");
    }
    strata[*doc.labels.begin()].push_back(doc.id);
  }
  FoldAssignment folds;
  folds.k = k;
  Rng rng(seed);
  std::size_t deal = 0;
  for (auto &[label, ids] : strata) {
    if (warnings && ids.size() < static_cast<std::size_t>(k)) {
      warnings->push_back("stratum " + label + " has " +
                          std::to_string(ids.size()) + " documents for " +
                          std::to_string(k) + " folds");
    }
    shuffle(ids, rng);
    for (const auto &id : ids) {
      if (!folds.assignment.emplace(id, static_cast<int>(deal % k)).second) {
        throw ConfigError("duplicate document id " + id);
      }
      ++deal;
    }
  }
  return folds;
}

}  // namespace wikitc
