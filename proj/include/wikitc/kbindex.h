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

#ifndef WIKITC_KBINDEX_H_
#define WIKITC_KBINDEX_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikitc/common.h"

namespace wikitc {

// One knowledge-base concept.
struct KnowledgeRecord {
  std::string title;
  std::vector<std::string> redirects;
  std::vector<std::string> entity_types;  // e.g. "Freebase:person"
  std::vector<std::string> categories;
  std::vector<std::string> linked_concepts;
  std::string contents;
  std::int64_t page_rank = 0;

  bool operator==(const KnowledgeRecord &) const = default;
};

// Dump format: one record per line, seven TAB-separated fields in the
// order title, page_rank, redirects, entity_types, categories,
// linked_concepts, contents. List items are separated by '|'.
std::vector<KnowledgeRecord> parse_kb_dump(std::string_view text);
std::string write_kb_dump(const std::vector<KnowledgeRecord> &records);

enum class Field {
  kContents,
  kWikiTitle,
  kRedirects,
  kTypes,
  kCategories,
  kLinkedConcepts,
  kPageRank,
};
inline constexpr std::size_t kIndexedFieldCount = 6;  // all but pageRank

const char *field_name(Field field);
std::optional<Field> parse_field(std::string_view name);

// "Freebase: organization" -> "freebase:organization".
std::string normalize_entity_type(std::string_view type);

// Lowercases and strips leading/trailing delimiter characters, so
// "(milrinone)" and "failure." match the indexed tokens.
std::string normalize_term(std::string_view raw, Field field);

enum class Occur { kShould, kMust, kMustNot };

struct QueryClause {
  Field field = Field::kContents;
  Occur occur = Occur::kShould;
  bool is_range = false;
  // Term clauses: raw is the text as written (used for serialization),
  // term the normalized form used for matching.
  std::string raw;
  std::string term;
  // Range clauses, inclusive on both ends.
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  static QueryClause make_term(Field field, Occur occur, std::string raw);
  static QueryClause make_range(Field field, Occur occur, std::int64_t lo,
                                std::int64_t hi);

  bool operator==(const QueryClause &) const = default;
};

struct FieldedQuery {
  std::vector<QueryClause> clauses;

  bool operator==(const FieldedQuery &) const = default;
};

// Grammar: query := clause+; clause := ['-'|'+'] field ':' (term | range);
// range := '[' int 'TO' int ']'. Throws ParseError with a column on bad
// syntax and on ranges outside pageRank.
FieldedQuery parse_query(std::string_view text);

// Canonical form: clauses separated by single spaces, terms as written.
std::string serialize_query(const FieldedQuery &query);

struct SearchHit {
  std::string record_title;
  double score = 0.0;

  bool operator==(const SearchHit &) const = default;
};

// Write-once fielded inverted index over knowledge records.
class Index {
 public:
  Index() = default;

  // Throws ConfigError naming a duplicate title.
  static Index build(std::vector<KnowledgeRecord> records);

  std::size_t size() const { return records_.size(); }
  const std::vector<KnowledgeRecord> &records() const { return records_; }

  // Not-found is nullptr.
  const KnowledgeRecord *get_record(std::string_view title) const;

  std::uint32_t document_frequency(Field field, std::string_view term) const;
  std::uint32_t term_frequency(Field field, std::string_view term,
                               std::size_t record) const;
  std::uint32_t field_length(Field field, std::size_t record) const;

  // Terms of one field with their document frequencies, sorted by term.
  std::vector<std::pair<std::string, std::uint32_t>> field_terms(
      Field field) const;

  // Candidate records, scored and truncated to the n best. Ties are
  // broken by title. Throws std::invalid_argument when n < 1.
  std::vector<SearchHit> search(const FieldedQuery &query,
                                std::size_t n) const;

  // Score of one record; 0 when the record does not match any term clause.
  double score(const FieldedQuery &query, std::size_t record) const;

  // Whether the record survives the query's Must/MustNot constraints and
  // matches at least one Should/Must clause.
  bool is_candidate(const FieldedQuery &query, std::size_t record) const;

 private:
  struct Posting {
    std::uint32_t record;
    std::uint32_t tf;
  };
  using PostingMap = std::unordered_map<std::string, std::vector<Posting>>;

  bool clause_matches(const QueryClause &clause, std::size_t record) const;
  double idf(Field field, std::string_view term) const;

  std::vector<KnowledgeRecord> records_;
  std::unordered_map<std::string, std::size_t> by_title_;
  std::array<PostingMap, kIndexedFieldCount> postings_;
  std::array<std::vector<std::uint32_t>, kIndexedFieldCount> lengths_;
};

// Terms a field contributes for one record, in order.
std::vector<std::string> field_tokens(const KnowledgeRecord &record,
                                      Field field);

}  // namespace wikitc

#endif  // WIKITC_KBINDEX_H_
