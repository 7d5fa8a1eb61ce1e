//
// Copyright 2026 The funcprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "funcprobe/lexicon.hpp"

#include <set>

#include "gtest/gtest.h"

namespace funcprobe {
namespace {

TEST(LexiconTest, PrepositionListIsExactlyTheCuratedItems) {
  const std::vector<std::string> expected = {
      "about", "above", "across", "after", "against", "ahead of", "all over", "along", "among",
      "around", "at", "before", "behind", "below", "beneath", "beside", "by", "for", "from", "in",
      "in front of", "inside", "inside of", "into", "near", "nearby", "next to", "on", "on top of",
      "out of", "outside", "outside of", "over", "past", "through", "to", "under", "up", "within",
      "with", "without"};
  EXPECT_EQ(default_lexicons().prepositions, expected);
  EXPECT_EQ(expected.size(), 41u);
}

TEST(LexiconTest, FixedWordSets) {
  const auto& lex = default_lexicons();
  EXPECT_EQ(lex.wh_words, (std::vector<std::string>{"who", "what", "where", "when", "why", "how"}));
  EXPECT_EQ(lex.conjunctions, (std::vector<std::string>{"and", "but", "or"}));
  EXPECT_EQ(lex.articles, (std::vector<std::string>{"the", "a", "an"}));
}

TEST(LexiconTest, SeededWithTheExemplifiedWords) {
  const auto& lex = default_lexicons();
  const auto comparatives = lex.comparative_words();
  for (auto w : {"more", "less", "bigger", "smaller"}) {
    EXPECT_NE(std::find(comparatives.begin(), comparatives.end(), w), comparatives.end()) << w;
  }
  for (auto w : {"all", "some", "two", "twenty", "half", "one-third", "quarter"}) {
    EXPECT_NE(std::find(lex.quantifiers.begin(), lex.quantifiers.end(), w), lex.quantifiers.end()) << w;
  }
  for (auto w : {"left", "right", "close", "far"}) {
    EXPECT_NE(std::find(lex.spatial_words.begin(), lex.spatial_words.end(), w), lex.spatial_words.end()) << w;
  }
}

TEST(LexiconTest, EntriesAreLowercase) {
  const auto& lex = default_lexicons();
  for (const auto* list : {&lex.wh_words, &lex.prepositions, &lex.quantifiers, &lex.spatial_words,
                           &lex.an_exceptions}) {
    for (const auto& w : *list) EXPECT_EQ(w, to_lower(w));
  }
  for (const auto& [a, b] : lex.antonyms) {
    EXPECT_EQ(a, to_lower(a));
    EXPECT_EQ(b, to_lower(b));
  }
}

TEST(LexiconTest, AntonymLookupIsSymmetric) {
  const auto& lex = default_lexicons();
  EXPECT_GE(lex.antonyms.size(), 200u);
  for (const auto& [a, b] : lex.antonyms) {
    EXPECT_EQ(lex.antonym_of(a), b);
    EXPECT_EQ(lex.antonym_of(b), a);
  }
  EXPECT_EQ(lex.antonym_of("Dirty"), "clean");
  EXPECT_FALSE(lex.antonym_of("zebra").has_value());
}

TEST(LexiconTest, AntonymWordsAreUnique) {
  std::set<std::string> seen;
  for (const auto& [a, b] : default_lexicons().antonyms) {
    EXPECT_TRUE(seen.insert(a).second) << a;
    EXPECT_TRUE(seen.insert(b).second) << b;
  }
}

TEST(LexiconTest, IndefiniteArticleChoice) {
  const auto& lex = default_lexicons();
  EXPECT_TRUE(lex.takes_an("apple"));
  EXPECT_TRUE(lex.takes_an("hour"));
  EXPECT_TRUE(lex.takes_an("Uncommon"));
  EXPECT_FALSE(lex.takes_an("case"));
  EXPECT_FALSE(lex.takes_an("university"));
  EXPECT_FALSE(lex.takes_an("one"));
}

TEST(LexiconTest, BundledFilesMatchEmbeddedDefaults) {
  const auto loaded = load_lexicons(FUNCPROBE_DATA "/lexicons");
  const auto& embedded = default_lexicons();
  EXPECT_EQ(loaded.wh_words, embedded.wh_words);
  EXPECT_EQ(loaded.prepositions, embedded.prepositions);
  EXPECT_EQ(loaded.comparatives, embedded.comparatives);
  EXPECT_EQ(loaded.quantifiers, embedded.quantifiers);
  EXPECT_EQ(loaded.spatial_words, embedded.spatial_words);
  EXPECT_EQ(loaded.antonyms, embedded.antonyms);
  EXPECT_EQ(loaded.an_exceptions, embedded.an_exceptions);
}

TEST(LexiconTest, MalformedPairLineIsAParseError) {
  EXPECT_THROW(detail::parse_pair_list("hot cold\n", "antonyms"), Error);
}

}  // namespace
}  // namespace funcprobe
