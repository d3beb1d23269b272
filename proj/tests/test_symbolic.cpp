// Copyright 2026 The fracdioph Authors
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

#include <gtest/gtest.h>

#include "fracdioph/rng.hpp"
#include "fracdioph/word.hpp"

namespace fracdioph {
namespace {

Word random_word(Rng& rng, int max_len, int alphabet) {
  std::vector<int32_t> letters;
  int len = static_cast<int>(rng.next_below(static_cast<uint64_t>(max_len + 1)));
  for (int i = 0; i < len; ++i) letters.push_back(static_cast<int32_t>(rng.next_below(static_cast<uint64_t>(alphabet))));
  return Word(letters);
}

TEST(Word, LongestCommonPrefix) {
  EXPECT_EQ(longest_common_prefix(Word{0, 1, 1}, Word{0, 1, 0}), (Word{0, 1}));
  EXPECT_EQ(longest_common_prefix(Word{2, 2}, Word{2, 2}), (Word{2, 2}));
  EXPECT_EQ(longest_common_prefix(Word{0, 3, 3}, Word{1, 3, 3}), Word{});
  EXPECT_EQ(longest_common_prefix(Word{}, Word{1, 2}), Word{});
}

TEST(Word, SymbolicDist) {
  SymbolicMetricParams half(0.5);
  EXPECT_DOUBLE_EQ(symbolic_dist(Word{0, 1}, Word{0, 0}, half), 0.5);
  EXPECT_DOUBLE_EQ(symbolic_dist(Word{0, 1}, Word{0, 1}, half), 0.25);
  SymbolicMetricParams third(1.0 / 3);
  EXPECT_DOUBLE_EQ(symbolic_dist(Word{0, 5}, Word{1, 5}, third), 1.0);
}

TEST(Word, Shift) {
  EXPECT_EQ(shift(Word{3, 1, 4}), (Word{1, 4}));
  EXPECT_EQ(shift(Word{7}), Word{});
  EXPECT_THROW(shift(Word{}), std::invalid_argument);
  // shifting |w| times empties any word
  Word w{2, 0, 1, 1, 0};
  for (size_t i = 0; i < 5; ++i) w = shift(w);
  EXPECT_TRUE(w.empty());
}

TEST(Word, MetricParamsDomain) {
  EXPECT_THROW(SymbolicMetricParams(0.0), std::invalid_argument);
  EXPECT_THROW(SymbolicMetricParams(1.0), std::invalid_argument);
  EXPECT_THROW(Word({0, -1}), std::invalid_argument);
}

TEST(Word, UltrametricProperty) {
  Rng rng(12345);
  SymbolicMetricParams params(0.37);
  for (int trial = 0; trial < 2000; ++trial) {
    Word a = random_word(rng, 8, 3);
    Word b = random_word(rng, 8, 3);
    Word c = random_word(rng, 8, 3);
    double ab = symbolic_dist(a, b, params);
    double bc = symbolic_dist(b, c, params);
    double ac = symbolic_dist(a, c, params);
    EXPECT_LE(ac, std::max(ab, bc) + 1e-15);
  }
}

TEST(Word, PrefixProperty) {
  Rng rng(777);
  for (int trial = 0; trial < 2000; ++trial) {
    Word a = random_word(rng, 10, 2);
    Word b = random_word(rng, 10, 2);
    Word p = longest_common_prefix(a, b);
    EXPECT_TRUE(p.is_prefix_of(a));
    EXPECT_TRUE(p.is_prefix_of(b));
    EXPECT_LE(p.length(), std::min(a.length(), b.length()));
    // extending the common prefix by one letter stays a prefix of at most one
    if (p.length() < std::min(a.length(), b.length())) {
      int extensions_matching = 0;
      for (int32_t letter : {a.at(p.length()), b.at(p.length())}) {
        Word q = p.append(letter);
        if (q.is_prefix_of(a) && q.is_prefix_of(b)) ++extensions_matching;
      }
      EXPECT_EQ(extensions_matching, 0);
    }
  }
}

}  // namespace
}  // namespace fracdioph
