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

#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "funcprobe/error.hpp"
#include "funcprobe/lexicon_data.hpp"
#include "funcprobe/text.hpp"

namespace funcprobe {

using WordPair = std::pair<std::string, std::string>;

// Word lists driving the mutators. Entries are lowercase; multi-word entries
// (e.g. "in front of") are single space-separated strings.
struct Lexicons {
  std::vector<std::string> wh_words;
  std::vector<std::string> conjunctions;
  std::vector<std::string> articles;
  std::vector<std::string> prepositions;
  std::vector<WordPair> comparatives;
  std::vector<std::string> quantifiers;
  std::vector<std::string> spatial_words;
  std::vector<WordPair> antonyms;
  std::vector<std::string> an_exceptions;

  // Symmetric: antonym_of("dirty") finds ("clean", "dirty").
  std::optional<std::string> antonym_of(std::string_view word) const {
    const std::string lower = to_lower(word);
    for (const auto& [a, b] : antonyms) {
      if (a == lower) return b;
      if (b == lower) return a;
    }
    return std::nullopt;
  }

  bool are_antonyms(std::string_view x, std::string_view y) const {
    const auto other = antonym_of(x);
    return other && *other == to_lower(y);
  }

  std::vector<std::string> comparative_words() const {
    std::set<std::string> words;
    for (const auto& [a, b] : comparatives) {
      words.insert(a);
      words.insert(b);
    }
    return {words.begin(), words.end()};
  }

  // Indefinite article choice for the word that follows it.
  bool takes_an(std::string_view next_word) const {
    const std::string lower = to_lower(next_word);
    if (lower.empty()) return false;
    const bool vowel = std::string_view("aeiou").find(lower.front()) != std::string_view::npos;
    const bool exception =
        std::find(an_exceptions.begin(), an_exceptions.end(), lower) != an_exceptions.end();
    return vowel != exception;
  }
};

namespace detail {

inline std::vector<std::string> lexicon_lines(std::string_view content) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(content)};
  for (std::string raw; std::getline(in, raw);) {
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto line = trim(raw);
    if (!line.empty()) lines.emplace_back(line);
  }
  return lines;
}

inline std::vector<std::string> parse_word_list(std::string_view content) {
  std::vector<std::string> words;
  for (const auto& line : lexicon_lines(content)) words.push_back(to_lower(line));
  return words;
}

inline std::vector<WordPair> parse_pair_list(std::string_view content, std::string_view what) {
  std::vector<WordPair> pairs;
  for (const auto& line : lexicon_lines(content)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorCode::kParse, std::string(what) + ": expected a tab-separated pair in '" + line + "'");
    }
    pairs.emplace_back(to_lower(trim(std::string_view(line).substr(0, tab))),
                       to_lower(trim(std::string_view(line).substr(tab + 1))));
  }
  return pairs;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace detail

inline const Lexicons& default_lexicons() {
  static const Lexicons lexicons = [] {
    namespace d = lexicon_data;
    Lexicons lex;
    lex.wh_words = detail::parse_word_list(d::kWhWords);
    lex.conjunctions = detail::parse_word_list(d::kConjunctions);
    lex.articles = detail::parse_word_list(d::kArticles);
    lex.prepositions = detail::parse_word_list(d::kPrepositions);
    lex.comparatives = detail::parse_pair_list(d::kComparatives, "comparatives");
    lex.quantifiers = detail::parse_word_list(d::kQuantifiers);
    lex.spatial_words = detail::parse_word_list(d::kSpatialWords);
    lex.antonyms = detail::parse_pair_list(d::kAntonyms, "antonyms");
    lex.an_exceptions = detail::parse_word_list(d::kAnExceptions);
    return lex;
  }();
  return lexicons;
}

// Loads a lexicon directory laid out like data/lexicons/. Missing files fall
// back to the bundled defaults.
inline Lexicons load_lexicons(const std::filesystem::path& dir) {
  Lexicons lex = default_lexicons();
  const auto maybe = [&](const char* file) -> std::optional<std::string> {
    const auto path = dir / file;
    if (!std::filesystem::exists(path)) return std::nullopt;
    return detail::read_file(path);
  };
  if (auto c = maybe("wh_words.txt")) lex.wh_words = detail::parse_word_list(*c);
  if (auto c = maybe("conjunctions.txt")) lex.conjunctions = detail::parse_word_list(*c);
  if (auto c = maybe("articles.txt")) lex.articles = detail::parse_word_list(*c);
  if (auto c = maybe("prepositions.txt")) lex.prepositions = detail::parse_word_list(*c);
  if (auto c = maybe("comparatives.txt")) lex.comparatives = detail::parse_pair_list(*c, "comparatives");
  if (auto c = maybe("quantifiers.txt")) lex.quantifiers = detail::parse_word_list(*c);
  if (auto c = maybe("spatial.txt")) lex.spatial_words = detail::parse_word_list(*c);
  if (auto c = maybe("antonyms.tsv")) lex.antonyms = detail::parse_pair_list(*c, "antonyms");
  if (auto c = maybe("an_exceptions.txt")) lex.an_exceptions = detail::parse_word_list(*c);
  return lex;
}

}  // namespace funcprobe
