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

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "wikitc/common.h"

namespace wikitc {
namespace {

TEST_CASE("string helpers") {
  CHECK(to_lower("Reno FBI") == "reno fbi");
  CHECK(trim("  a b \t\n") == "a b");
  CHECK(trim("") == "");
  CHECK(split("a|b||c", '|') == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(split("", '|') == std::vector<std::string>{""});
  CHECK(join({"a", "b", "c"}, ", ") == "a, b, c");
  CHECK(join({}, ",") == "");
}

TEST_CASE("uniform_index stays in range and covers it") {
  Rng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    auto v = uniform_index(rng, 5);
    CHECK(v < 5);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("shuffle is a seeded permutation") {
  std::vector<int> base(50);
  for (int i = 0; i < 50; ++i) base[i] = i;
  auto a = base, b = base;
  Rng ra(42), rb(42);
  shuffle(a, ra);
  shuffle(b, rb);
  CHECK(a == b);
  CHECK(a != base);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == base);
}

TEST_CASE("read_file reports missing files") {
  CHECK_THROWS_AS(read_file("/nonexistent/wikitc/file"), ConfigError);
}

}  // namespace
}  // namespace wikitc
