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

#ifndef WIKITC_ENRICH_H_
#define WIKITC_ENRICH_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikitc/kbindex.h"
#include "wikitc/textproc.h"

namespace wikitc {

// Knowledge gathered for one document. Each list is deduplicated keeping
// the first occurrence, in hit-rank order.
struct EnrichmentOutput {
  std::vector<std::string> titles;
  std::vector<std::string> categories;
  std::vector<std::string> linked_concepts;

  bool empty() const {
    return titles.empty() && categories.empty() && linked_concepts.empty();
  }
  // Appends other's items that are not already present.
  void merge(const EnrichmentOutput &other);

  bool operator==(const EnrichmentOutput &) const = default;
};

// Options shared by the E2 and E3 query builders.
struct E2Options {
  std::optional<std::string> title_term;
  // Records with page rank in [1, min_rank] are excluded; <= 0 disables.
  std::int64_t min_rank = 5;
};

// E1: top-n records by contents similarity; their titles and categories.
EnrichmentOutput enrich_e1(const TaggedDocument &doc, const Index &index,
                           std::size_t n);

FieldedQuery build_e2_query(const TaggedDocument &doc,
                            const std::optional<std::string> &title_term,
                            std::int64_t min_rank);

// E2: fielded query with the page-rank constraint; titles, categories and
// linked concepts of the top-k hits.
EnrichmentOutput enrich_e2(const TaggedDocument &doc, const Index &index,
                           std::size_t k, const E2Options &options = {});

// The E2 query plus one types clause per entity kind tagged in doc.
FieldedQuery build_e3_query(const TaggedDocument &doc,
                            const std::optional<std::string> &title_term,
                            std::int64_t min_rank);

EnrichmentOutput enrich_e3(const TaggedDocument &doc, const Index &index,
                           std::size_t k, const E2Options &options = {});

// E4: keep iff the first character is an uppercase letter and there is no
// digit anywhere.
bool filter_e4(std::string_view term);

// E5: splits each term on delimiters (underscore excepted) and whitespace,
// drops stop-word pieces and joins the rest with '_'. Terms left empty
// disappear.
std::vector<std::string> clean_e5(const std::vector<std::string> &terms,
                                  const Stoplist &stoplist);

struct Preset {
  std::string name;  // A1..A5, baseline or custom
  Representation representation = Representation::kT1;
  bool use_e1 = false;
  bool use_e2 = false;
  bool use_e3 = false;
  bool apply_e4 = true;
  bool apply_e5 = true;
  std::size_t k = 5;
  bool include_linked = false;

  bool is_baseline() const { return !use_e1 && !use_e2 && !use_e3; }
  bool operator==(const Preset &) const = default;
};

// A1..A5 and "baseline" (T1, no enrichment). Throws ConfigError otherwise.
Preset named_preset(std::string_view name);

// Checks k >= 1 for enriching presets and that E3 has a tagged
// representation to work with.
void validate_preset(const Preset &preset);

// Runs the preset's strategies (E1 then E2 then E3), concatenates their
// output, filters and cleans the terms and appends them to the represented
// document as knowledge tokens.
TaggedDocument apply_preset(const RawDocument &doc, const Preset &preset,
                            const Index &index, const TextResources &resources,
                            const E2Options &options = {});

// The knowledge terms apply_preset would append, before tokenization into
// the document.
std::vector<std::string> enrichment_terms(const TaggedDocument &represented,
                                          const Preset &preset,
                                          const Index &index,
                                          const Stoplist &stoplist,
                                          const E2Options &options = {});

}  // namespace wikitc

#endif  // WIKITC_ENRICH_H_
