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

#include "wikitc/kbindex.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wikitc/textproc.h"

namespace wikitc {

namespace {

std::int64_t parse_int(std::string_view s, bool *ok) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  *ok = ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  return value;
}

std::vector<std::string> parse_list(const std::string &field,
                                    std::size_t line_no) {
  std::vector<std::string> items;
  if (field.empty()) return items;
  for (auto &item : split(field, '|')) {
    if (item.empty()) {
      throw ParseError("kb dump line " + std::to_string(line_no) +
                       ": empty list item");
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::size_t slot(Field field) { return static_cast<std::size_t>(field); }

}  // namespace

std::vector<KnowledgeRecord> parse_kb_dump(std::string_view text) {
  std::vector<KnowledgeRecord> records;
  std::size_t line_no = 0;
  for (auto &raw : split(text, '\n')) {
    ++line_no;
    std::string line = std::move(raw);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 7) {
      throw ParseError("kb dump line " + std::to_string(line_no) +
                       ": expected 7 fields, got " +
                       std::to_string(fields.size()));
    }
    KnowledgeRecord record;
    record.title = fields[0];
    if (record.title.empty()) {
      throw ParseError("kb dump line " + std::to_string(line_no) +
                       ": empty title");
    }
    bool ok = false;
    record.page_rank = parse_int(fields[1], &ok);
    if (!ok || record.page_rank < 0) {
      throw ParseError("kb dump line " + std::to_string(line_no) +
                       ": bad page rank '" + fields[1] + "'");
    }
    record.redirects = parse_list(fields[2], line_no);
    record.entity_types = parse_list(fields[3], line_no);
    record.categories = parse_list(fields[4], line_no);
    record.linked_concepts = parse_list(fields[5], line_no);
    record.contents = fields[6];
    records.push_back(std::move(record));
  }
  return records;
}

std::string write_kb_dump(const std::vector<KnowledgeRecord> &records) {
  std::ostringstream out;
  for (const auto &r : records) {
    out << r.title << '\t' << r.page_rank << '\t' << join(r.redirects, "|")
        << '\t' << join(r.entity_types, "|") << '\t'
        << join(r.categories, "|") << '\t' << join(r.linked_concepts, "|")
        << '\t' << r.contents << '\n';
  }
  return out.str();
}

const char *field_name(Field field) {
  switch (field) {
    case Field::kContents: return "contents";
    case Field::kWikiTitle: return "wikiTitle";
    case Field::kRedirects: return "redirects";
    case Field::kTypes: return "types";
    case Field::kCategories: return "categories";
    case Field::kLinkedConcepts: return "linkedConcepts";
    case Field::kPageRank: return "pageRank";
  }
  return "contents";
}

std::optional<Field> parse_field(std::string_view name) {
  for (Field f : {Field::kContents, Field::kWikiTitle, Field::kRedirects,
                  Field::kTypes, Field::kCategories, Field::kLinkedConcepts,
                  Field::kPageRank}) {
    if (name == field_name(f)) return f;
  }
  return std::nullopt;
}

std::string normalize_entity_type(std::string_view type) {
  std::string lowered = to_lower(trim(type));
  std::string out;
  for (std::size_t i = 0; i < lowered.size(); ++i) {
    char c = lowered[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      bool after_colon = !out.empty() && out.back() == ':';
      std::size_t next = lowered.find_first_not_of(" \t", i);
      bool before_colon = next != std::string::npos && lowered[next] == ':';
      if (after_colon || before_colon) continue;
    }
    out += c;
  }
  return out;
}

std::string normalize_term(std::string_view raw, Field field) {
  if (field == Field::kTypes) return normalize_entity_type(raw);
  std::size_t b = 0, e = raw.size();
  while (b < e && is_delimiter(raw[b])) ++b;
  while (e > b && is_delimiter(raw[e - 1])) --e;
  return to_lower(raw.substr(b, e - b));
}

QueryClause QueryClause::make_term(Field field, Occur occur, std::string raw) {
  QueryClause clause;
  clause.field = field;
  clause.occur = occur;
  clause.term = normalize_term(raw, field);
  clause.raw = std::move(raw);
  return clause;
}

QueryClause QueryClause::make_range(Field field, Occur occur, std::int64_t lo,
                                    std::int64_t hi) {
  QueryClause clause;
  clause.field = field;
  clause.occur = occur;
  clause.is_range = true;
  clause.lo = lo;
  clause.hi = hi;
  return clause;
}

FieldedQuery parse_query(std::string_view text) {
  FieldedQuery query;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  auto column = [](std::size_t pos) { return std::to_string(pos + 1); };
  while (true) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    const std::size_t clause_start = i;
    Occur occur = Occur::kShould;
    if (text[i] == '-') {
      occur = Occur::kMustNot;
      ++i;
    } else if (text[i] == '+') {
      occur = Occur::kMust;
      ++i;
    }
    std::size_t colon = i;
    while (colon < n && text[colon] != ':' && !is_space(text[colon])) ++colon;
    if (colon >= n || text[colon] != ':') {
      throw ParseError("expected field:value at column " +
                       column(clause_start));
    }
    std::string_view name = text.substr(i, colon - i);
    auto field = parse_field(name);
    if (!field) {
      throw ParseError("unknown field '" + std::string(name) +
                       "' at column " + column(i));
    }
    i = colon + 1;
    if (i < n && text[i] == '[') {
      std::size_t close = text.find(']', i);
      if (close == std::string_view::npos) {
        throw ParseError("unterminated range at column " + column(i));
      }
      std::istringstream in(std::string(text.substr(i + 1, close - i - 1)));
      std::string lo_s, to, hi_s, extra;
      in >> lo_s >> to >> hi_s;
      bool lo_ok = false, hi_ok = false;
      std::int64_t lo = parse_int(lo_s, &lo_ok);
      std::int64_t hi = parse_int(hi_s, &hi_ok);
      if (!lo_ok || !hi_ok || to != "TO" || (in >> extra)) {
        throw ParseError("malformed range at column " + column(i));
      }
      if (*field != Field::kPageRank) {
        throw ParseError("range on field '" + std::string(name) +
                         "' at column " + column(clause_start) +
                         "; ranges apply to pageRank only");
      }
      query.clauses.push_back(QueryClause::make_range(*field, occur, lo, hi));
      i = close + 1;
      continue;
    }
    std::size_t end = i;
    while (end < n && !is_space(text[end])) ++end;
    if (end == i) {
      throw ParseError("missing term at column " + column(i));
    }
    std::string raw(text.substr(i, end - i));
    if (*field == Field::kPageRank) {
      bool ok = false;
      std::int64_t value = parse_int(raw, &ok);
      if (!ok) {
        throw ParseError("pageRank expects an integer at column " + column(i));
      }
      query.clauses.push_back(
          QueryClause::make_range(*field, occur, value, value));
    } else {
      query.clauses.push_back(QueryClause::make_term(*field, occur, raw));
    }
    i = end;
  }
  return query;
}

std::string serialize_query(const FieldedQuery &query) {
  std::string out;
  for (const auto &clause : query.clauses) {
    if (!out.empty()) out += ' ';
    if (clause.occur == Occur::kMustNot) out += '-';
    if (clause.occur == Occur::kMust) out += '+';
    out += field_name(clause.field);
    out += ':';
    if (clause.is_range) {
      out += '[' + std::to_string(clause.lo) + " TO " +
             std::to_string(clause.hi) + ']';
    } else {
      out += clause.raw;
    }
  }
  return out;
}

std::vector<std::string> field_tokens(const KnowledgeRecord &record,
                                      Field field) {
  std::vector<std::string> out;
  auto add_text = [&](std::string_view text) {
    for (const auto &token : tokenize(text)) {
      out.push_back(to_lower(token.surface));
    }
  };
  switch (field) {
    case Field::kContents: add_text(record.contents); break;
    case Field::kWikiTitle: add_text(record.title); break;
    case Field::kRedirects:
      for (const auto &item : record.redirects) add_text(item);
      break;
    case Field::kCategories:
      for (const auto &item : record.categories) add_text(item);
      break;
    case Field::kLinkedConcepts:
      for (const auto &item : record.linked_concepts) add_text(item);
      break;
    case Field::kTypes:
      for (const auto &item : record.entity_types) {
        std::string type = normalize_entity_type(item);
        if (!type.empty()) out.push_back(std::move(type));
      }
      break;
    case Field::kPageRank: break;
  }
  return out;
}

Index Index::build(std::vector<KnowledgeRecord> records) {
  Index index;
  index.records_ = std::move(records);
  for (std::size_t r = 0; r < index.records_.size(); ++r) {
    const KnowledgeRecord &record = index.records_[r];
    if (!index.by_title_.emplace(record.title, r).second) {
      throw ConfigError("duplicate knowledge record title: " + record.title);
    }
    for (std::size_t f = 0; f < kIndexedFieldCount; ++f) {
      auto tokens = field_tokens(record, static_cast<Field>(f));
      index.lengths_[f].push_back(static_cast<std::uint32_t>(tokens.size()));
      PostingMap &postings = index.postings_[f];
      for (const auto &token : tokens) {
        auto &list = postings[token];
        if (!list.empty() && list.back().record == r) {
          ++list.back().tf;
        } else {
          list.push_back({static_cast<std::uint32_t>(r), 1});
        }
      }
    }
  }
  return index;
}

const KnowledgeRecord *Index::get_record(std::string_view title) const {
  auto it = by_title_.find(std::string(title));
  return it == by_title_.end() ? nullptr : &records_[it->second];
}

std::uint32_t Index::document_frequency(Field field,
                                        std::string_view term) const {
  if (field == Field::kPageRank) return 0;
  const auto &postings = postings_[slot(field)];
  auto it = postings.find(std::string(term));
  return it == postings.end() ? 0
                              : static_cast<std::uint32_t>(it->second.size());
}

std::uint32_t Index::term_frequency(Field field, std::string_view term,
                                    std::size_t record) const {
  if (field == Field::kPageRank) return 0;
  const auto &postings = postings_[slot(field)];
  auto it = postings.find(std::string(term));
  if (it == postings.end()) return 0;
  // Postings are in record order.
  auto pos = std::lower_bound(
      it->second.begin(), it->second.end(), record,
      [](const Posting &p, std::size_t r) { return p.record < r; });
  return pos != it->second.end() && pos->record == record ? pos->tf : 0;
}

std::uint32_t Index::field_length(Field field, std::size_t record) const {
  if (field == Field::kPageRank) return 0;
  return lengths_[slot(field)][record];
}

std::vector<std::pair<std::string, std::uint32_t>> Index::field_terms(
    Field field) const {
  std::vector<std::pair<std::string, std::uint32_t>> terms;
  if (field == Field::kPageRank) return terms;
  for (const auto &[term, list] : postings_[slot(field)]) {
    terms.emplace_back(term, static_cast<std::uint32_t>(list.size()));
  }
  std::sort(terms.begin(), terms.end());
  return terms;
}

double Index::idf(Field field, std::string_view term) const {
  const double n = static_cast<double>(records_.size());
  const double df = document_frequency(field, term);
  return 1.0 + std::log(n / (df + 1.0));
}

bool Index::clause_matches(const QueryClause &clause,
                           std::size_t record) const {
  if (clause.is_range) {
    const std::int64_t rank = records_[record].page_rank;
    return clause.lo <= rank && rank <= clause.hi;
  }
  if (clause.term.empty()) return false;
  return term_frequency(clause.field, clause.term, record) > 0;
}

bool Index::is_candidate(const FieldedQuery &query, std::size_t record) const {
  bool any_term = false;
  for (const auto &clause : query.clauses) {
    bool matches = clause_matches(clause, record);
    if (clause.occur == Occur::kMustNot) {
      if (matches) return false;
      continue;
    }
    if (clause.occur == Occur::kMust && !matches) return false;
    if (!clause.is_range && matches) any_term = true;
  }
  return any_term;
}

double Index::score(const FieldedQuery &query, std::size_t record) const {
  std::size_t scoring_clauses = 0;
  std::size_t matched_clauses = 0;
  double sum = 0.0;
  for (const auto &clause : query.clauses) {
    if (clause.occur == Occur::kMustNot) continue;
    ++scoring_clauses;
    if (!clause_matches(clause, record)) continue;
    ++matched_clauses;
    if (clause.is_range) continue;
    // Only contents and title clauses carry weight; the other fields are
    // match-only and contribute through the coordination factor.
    if (clause.field != Field::kContents && clause.field != Field::kWikiTitle) {
      continue;
    }
    const double tf = term_frequency(clause.field, clause.term, record);
    const double idf_value = idf(clause.field, clause.term);
    const double norm =
        1.0 / std::sqrt(static_cast<double>(field_length(clause.field, record)));
    sum += std::sqrt(tf) * idf_value * idf_value * norm;
  }
  if (scoring_clauses == 0 || matched_clauses == 0) return 0.0;
  const double coord = static_cast<double>(matched_clauses) /
                       static_cast<double>(scoring_clauses);
  return coord * sum;
}

std::vector<SearchHit> Index::search(const FieldedQuery &query,
                                     std::size_t n) const {
  if (n < 1) throw std::invalid_argument("search needs n >= 1");
  // Gather candidates from the postings of Should/Must term clauses.
  std::vector<char> seen(records_.size(), 0);
  std::vector<std::size_t> candidates;
  for (const auto &clause : query.clauses) {
    if (clause.occur == Occur::kMustNot || clause.is_range ||
        clause.term.empty()) {
      continue;
    }
    const auto &postings = postings_[slot(clause.field)];
    auto it = postings.find(clause.term);
    if (it == postings.end()) continue;
    for (const auto &p : it->second) {
      if (!seen[p.record]) {
        seen[p.record] = 1;
        candidates.push_back(p.record);
      }
    }
  }
  std::vector<SearchHit> hits;
  for (std::size_t r : candidates) {
    if (!is_candidate(query, r)) continue;
    hits.push_back({records_[r].title, score(query, r)});
  }
  auto better = [](const SearchHit &a, const SearchHit &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.record_title < b.record_title;
  };
  if (hits.size() > n) {
    std::partial_sort(hits.begin(), hits.begin() + n, hits.end(), better);
    hits.resize(n);
  } else {
    std::sort(hits.begin(), hits.end(), better);
  }
  return hits;
}

}  // namespace wikitc
