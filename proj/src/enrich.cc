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

#include "wikitc/enrich.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace wikitc {

namespace {

void append_unique(std::vector<std::string> &list,
                   const std::vector<std::string> &items) {
  for (const auto &item : items) {
    if (std::find(list.begin(), list.end(), item) == list.end()) {
      list.push_back(item);
    }
  }
}

EnrichmentOutput gather(const std::vector<SearchHit> &hits, const Index &index,
                        bool with_linked) {
  EnrichmentOutput out;
  for (const auto &hit : hits) {
    const KnowledgeRecord *record = index.get_record(hit.record_title);
    if (!record) continue;
    append_unique(out.titles, {record->title});
    append_unique(out.categories, record->categories);
    if (with_linked) append_unique(out.linked_concepts, record->linked_concepts);
  }
  return out;
}

bool has_text_tokens(const TaggedDocument &doc) {
  return std::any_of(doc.tokens.begin(), doc.tokens.end(), [](const auto &t) {
    return t.origin == TokenOrigin::kText;
  });
}

}  // namespace

void EnrichmentOutput::merge(const EnrichmentOutput &other) {
  append_unique(titles, other.titles);
  append_unique(categories, other.categories);
  append_unique(linked_concepts, other.linked_concepts);
}

EnrichmentOutput enrich_e1(const TaggedDocument &doc, const Index &index,
                           std::size_t n) {
  if (!has_text_tokens(doc) || n == 0) return {};
  FieldedQuery query;
  for (const auto &t : doc.tokens) {
    if (t.origin != TokenOrigin::kText) continue;
    query.clauses.push_back(QueryClause::make_term(
        Field::kContents, Occur::kShould, t.token.surface));
  }
  return gather(index.search(query, n), index, false);
}

FieldedQuery build_e2_query(const TaggedDocument &doc,
                            const std::optional<std::string> &title_term,
                            std::int64_t min_rank) {
  FieldedQuery query;
  if (title_term && !title_term->empty()) {
    query.clauses.push_back(
        QueryClause::make_term(Field::kWikiTitle, Occur::kShould, *title_term));
  }
  for (const auto &t : doc.tokens) {
    if (t.origin != TokenOrigin::kText) continue;
    query.clauses.push_back(QueryClause::make_term(
        Field::kContents, Occur::kShould, t.token.surface));
  }
  if (min_rank >= 1) {
    query.clauses.push_back(QueryClause::make_range(
        Field::kPageRank, Occur::kMustNot, 1, min_rank));
  }
  return query;
}

EnrichmentOutput enrich_e2(const TaggedDocument &doc, const Index &index,
                           std::size_t k, const E2Options &options) {
  if (!has_text_tokens(doc) || k == 0) return {};
  auto query = build_e2_query(doc, options.title_term, options.min_rank);
  return gather(index.search(query, k), index, true);
}

FieldedQuery build_e3_query(const TaggedDocument &doc,
                            const std::optional<std::string> &title_term,
                            std::int64_t min_rank) {
  FieldedQuery query = build_e2_query(doc, title_term, min_rank);
  bool present[4] = {false, false, false, false};
  for (const auto &t : doc.tokens) present[static_cast<int>(t.tag)] = true;
  // Insert before the trailing page-rank exclusion so the printed form
  // keeps the constraint last.
  auto insert_at = query.clauses.end();
  if (!query.clauses.empty() && query.clauses.back().is_range) --insert_at;
  std::vector<QueryClause> types;
  if (present[static_cast<int>(EntityTag::kPerson)]) {
    types.push_back(QueryClause::make_term(Field::kTypes, Occur::kShould,
                                           "freebase:person"));
  }
  if (present[static_cast<int>(EntityTag::kLocation)]) {
    types.push_back(QueryClause::make_term(Field::kTypes, Occur::kShould,
                                           "freebase:location"));
  }
  if (present[static_cast<int>(EntityTag::kOrganization)]) {
    types.push_back(QueryClause::make_term(Field::kTypes, Occur::kShould,
                                           "freebase:organization"));
  }
  query.clauses.insert(insert_at, types.begin(), types.end());
  return query;
}

EnrichmentOutput enrich_e3(const TaggedDocument &doc, const Index &index,
                           std::size_t k, const E2Options &options) {
  if (!has_text_tokens(doc) || k == 0) return {};
  auto query = build_e3_query(doc, options.title_term, options.min_rank);
  return gather(index.search(query, k), index, true);
}

bool filter_e4(std::string_view term) {
  if (term.empty()) return false;
  if (!std::isupper(static_cast<unsigned char>(term[0]))) return false;
  return std::none_of(term.begin(), term.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

std::vector<std::string> clean_e5(const std::vector<std::string> &terms,
                                  const Stoplist &stoplist) {
  std::vector<std::string> out;
  for (const auto &term : terms) {
    std::vector<std::string> pieces;
    std::string current;
    auto flush = [&] {
      if (!current.empty() && !stoplist.count(to_lower(current))) {
        pieces.push_back(current);
      }
      current.clear();
    };
    for (char c : term) {
      unsigned char u = static_cast<unsigned char>(c);
      if (u <= 0x20 || u == 0x7f || (c != '_' && is_delimiter(c))) {
        flush();
      } else {
        current += c;
      }
    }
    flush();
    if (!pieces.empty()) out.push_back(join(pieces, "_"));
  }
  return out;
}

Preset named_preset(std::string_view name) {
  Preset p;
  p.name = std::string(name);
  p.representation = Representation::kT1;
  if (name == "baseline") return p;
  if (name == "A1" || name == "A2") {
    p.use_e1 = true;
    p.k = name == "A1" ? 5 : 20;
    p.include_linked = false;
  } else if (name == "A3" || name == "A4") {
    p.use_e2 = true;
    p.k = name == "A3" ? 5 : 20;
    p.include_linked = true;
  } else if (name == "A5") {
    p.use_e1 = true;
    p.use_e2 = true;
    p.k = 20;
    p.include_linked = true;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) +
                      "' (expected A1..A5 or baseline)");
  }
  return p;
}

void validate_preset(const Preset &preset) {
  if (preset.is_baseline()) return;
  if (preset.k < 1) throw ConfigError("preset " + preset.name + ": k < 1");
  if (preset.use_e3 && preset.representation != Representation::kT2 &&
      preset.representation != Representation::kT4) {
    throw ConfigError("preset " + preset.name +
                      ": E3 needs an entity-tagged representation (T2 or T4)");
  }
}

std::vector<std::string> enrichment_terms(const TaggedDocument &represented,
                                          const Preset &preset,
                                          const Index &index,
                                          const Stoplist &stoplist,
                                          const E2Options &options) {
  EnrichmentOutput combined;
  auto add = [&](EnrichmentOutput out) {
    if (!preset.include_linked) out.linked_concepts.clear();
    combined.merge(out);
  };
  if (preset.use_e1) add(enrich_e1(represented, index, preset.k));
  if (preset.use_e2) add(enrich_e2(represented, index, preset.k, options));
  if (preset.use_e3) add(enrich_e3(represented, index, preset.k, options));

  std::vector<std::string> terms = combined.titles;
  terms.insert(terms.end(), combined.categories.begin(),
               combined.categories.end());
  terms.insert(terms.end(), combined.linked_concepts.begin(),
               combined.linked_concepts.end());

  if (preset.apply_e4) std::erase_if(terms, [](const auto &t) {
    return !filter_e4(t);
  });
  if (preset.apply_e5) {
    terms = clean_e5(terms, stoplist);
    // Cleaning can expose a lowercase first piece ("The matrix" -> "matrix").
    if (preset.apply_e4) std::erase_if(terms, [](const auto &t) {
      return !filter_e4(t);
    });
  } else {
    for (auto &term : terms) {
      std::replace_if(
          term.begin(), term.end(),
          [](char c) { return std::isspace(static_cast<unsigned char>(c)); },
          '_');
    }
    std::erase_if(terms, [](const auto &t) { return t.empty(); });
  }
  std::vector<std::string> unique;
  std::unordered_set<std::string> seen;
  for (auto &term : terms) {
    if (seen.insert(term).second) unique.push_back(std::move(term));
  }
  return unique;
}

TaggedDocument apply_preset(const RawDocument &doc, const Preset &preset,
                            const Index &index, const TextResources &resources,
                            const E2Options &options) {
  validate_preset(preset);
  TaggedDocument out = represent(doc, preset.representation, resources);
  if (preset.is_baseline() || index.size() == 0) return out;
  const Stoplist &stoplist =
      resources.stoplist ? *resources.stoplist : default_stoplist();
  auto terms = enrichment_terms(out, preset, index, stoplist, options);
  int position = out.tokens.empty() ? 0 : out.tokens.back().token.position + 1;
  for (auto &term : terms) {
    TaggedToken token;
    token.token = {std::move(term), position++};
    token.origin = TokenOrigin::kKnowledge;
    out.tokens.push_back(std::move(token));
  }
  return out;
}

}  // namespace wikitc
