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

#ifndef WIKITC_COMMON_H_
#define WIKITC_COMMON_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wikitc {

// Malformed input text (SGML, dumps, queries, config files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or missing resource.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-fatal diagnostics collected by loaders and trainers.
using Warnings = std::vector<std::string>;

// Seeded generator used for every random decision in the toolkit.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound). Implemented here rather than with
// std::uniform_int_distribution so results are identical across standard
// libraries.
std::uint64_t uniform_index(Rng &rng, std::uint64_t bound);

// Fisher-Yates shuffle driven by uniform_index.
template <typename T>
void shuffle(std::vector<T> &items, Rng &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string> &parts, std::string_view sep);

// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_file(const std::string &path);

}  // namespace wikitc

#endif  // WIKITC_COMMON_H_
