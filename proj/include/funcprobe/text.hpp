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
#include <array>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "funcprobe/error.hpp"

namespace funcprobe {

// Byte range [begin, end) into the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string form;
  Span span;
  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenizedSentence {
  std::string sentence_id;
  std::string text;
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  const std::string& operator[](std::size_t i) const { return tokens[i].form; }

  std::vector<std::string> words() const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.form);
    return out;
  }
};

inline constexpr std::size_t kDefaultMaxTokens = 40;

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Copies the capitalization pattern of `model` onto `word`: all-caps stays
// all-caps, an initial capital stays an initial capital.
inline std::string match_case(std::string_view model, std::string_view word) {
  std::string out = to_lower(word);
  if (model.empty() || out.empty()) return out;
  const bool first_upper = std::isupper(static_cast<unsigned char>(model.front())) != 0;
  const bool all_upper =
      model.size() > 1 && std::all_of(model.begin(), model.end(), [](char c) {
        return !std::isalpha(static_cast<unsigned char>(c)) ||
               std::isupper(static_cast<unsigned char>(c));
      });
  if (all_upper) {
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (first_upper) {
    out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
  }
  return out;
}

namespace detail {

inline constexpr std::string_view kEllipsis = "\xE2\x80\xA6";     // …
inline constexpr std::string_view kLeftDquote = "\xE2\x80\x9C";   // “
inline constexpr std::string_view kRightDquote = "\xE2\x80\x9D";  // ”

inline constexpr std::array<std::string_view, 6> kClitics = {"'s", "'re", "'ve", "'ll", "'d", "'m"};

inline constexpr std::array<std::string_view, 36> kAbbreviations = {
    "mr",  "mrs", "ms",  "dr",  "prof", "st",   "jr",  "sr",   "vs",
    "etc", "inc", "ltd", "co",  "corp", "gen",  "gov", "sen",  "rep",
    "mt",  "jan", "feb", "mar", "apr",  "jun",  "jul", "aug",  "sep",
    "sept", "oct", "nov", "dec", "approx", "dept", "est", "fig", "col"};

inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

inline bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }
inline bool ends_with(std::string_view s, std::string_view p) {
  return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

// Multibyte punctuation that is always split off.
inline std::size_t multibyte_punct_at(std::string_view s, std::size_t i) {
  for (auto p : {kEllipsis, kLeftDquote, kRightDquote}) {
    if (s.substr(i, p.size()) == p) return p.size();
  }
  return 0;
}

inline std::size_t multibyte_punct_suffix(std::string_view s) {
  for (auto p : {kEllipsis, kLeftDquote, kRightDquote}) {
    if (ends_with(s, p)) return p.size();
  }
  return 0;
}

inline bool is_abbreviation(std::string_view word) {
  if (word.find('.') != std::string_view::npos) return true;
  if (word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0])) && word[0] != 'I' &&
      word[0] != 'A') {
    return true;
  }
  const std::string lower = to_lower(word);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end();
}

inline void push_token(std::vector<Token>& out, std::string_view text, std::size_t begin,
                       std::size_t end) {
  if (end > begin) out.push_back({std::string(text.substr(begin, end - begin)), {begin, end}});
}

// Splits a word piece into stem + clitic ("is" "n't", "man" "'s").
inline void push_with_clitics(std::vector<Token>& out, std::string_view text, std::size_t begin,
                              std::size_t end) {
  const std::string_view piece = text.substr(begin, end - begin);
  const std::string lower = to_lower(piece);
  if (lower.size() > 3 && ends_with(lower, "n't")) {
    push_token(out, text, begin, end - 3);
    push_token(out, text, end - 3, end);
    return;
  }
  for (auto clitic : kClitics) {
    if (lower.size() > clitic.size() && ends_with(lower, clitic)) {
      push_token(out, text, begin, end - clitic.size());
      push_token(out, text, end - clitic.size(), end);
      return;
    }
  }
  push_token(out, text, begin, end);
}

// Splits the interior of a chunk on punctuation that never belongs to a word.
// ',', ';' and ':' survive between two digits ("300,000", "10:30").
inline void split_interior(std::vector<Token>& out, std::string_view text, std::size_t begin,
                           std::size_t end) {
  std::size_t word_begin = begin;
  std::size_t i = begin;
  while (i < end) {
    const char c = text[i];
    std::size_t punct_len = 0;
    if (c == '?' || c == '!' || c == '"' || c == '(' || c == ')') {
      punct_len = 1;
    } else if (c == ',' || c == ';' || c == ':') {
      const bool numeric = i > begin && i + 1 < end && is_digit(text[i - 1]) && is_digit(text[i + 1]);
      punct_len = numeric ? 0 : 1;
    } else {
      punct_len = multibyte_punct_at(text.substr(0, end), i);
    }
    if (punct_len == 0) {
      ++i;
      continue;
    }
    if (i > word_begin) push_with_clitics(out, text, word_begin, i);
    push_token(out, text, i, i + punct_len);
    i += punct_len;
    word_begin = i;
  }
  if (end > word_begin) push_with_clitics(out, text, word_begin, end);
}

inline void tokenize_chunk(std::vector<Token>& out, std::string_view text, std::size_t begin,
                           std::size_t end) {
  // Leading punctuation.
  while (begin < end) {
    const char c = text[begin];
    if (c == '"' || c == '(') {
      push_token(out, text, begin, begin + 1);
      ++begin;
      continue;
    }
    if (std::size_t n = multibyte_punct_at(text.substr(0, end), begin); n > 0) {
      push_token(out, text, begin, begin + n);
      begin += n;
      continue;
    }
    if (c == '.' && begin + 1 < end && text[begin + 1] == '.') {
      std::size_t run = begin;
      while (run < end && text[run] == '.') ++run;
      push_token(out, text, begin, run);
      begin = run;
      continue;
    }
    break;
  }

  // Trailing punctuation, collected right to left.
  std::vector<Span> trailing;
  while (end > begin) {
    const char c = text[end - 1];
    if (c == ',' || c == '?' || c == '!' || c == ';' || c == ':' || c == '"' || c == ')') {
      trailing.push_back({end - 1, end});
      --end;
      continue;
    }
    if (std::size_t n = multibyte_punct_suffix(text.substr(begin, end - begin)); n > 0) {
      trailing.push_back({end - n, end});
      end -= n;
      continue;
    }
    if (c == '.') {
      std::size_t run = end;
      while (run > begin && text[run - 1] == '.') --run;
      if (end - run >= 2 || run == begin) {
        trailing.push_back({run, end});
        end = run;
        continue;
      }
      if (is_abbreviation(text.substr(begin, end - 1 - begin))) break;
      trailing.push_back({end - 1, end});
      --end;
      continue;
    }
    break;
  }

  if (end > begin) split_interior(out, text, begin, end);
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
    push_token(out, text, it->begin, it->end);
  }
}

}  // namespace detail

// Rule-based word splitter. Tokens are always exact substrings of `text`, so
// text.substr(span.begin, span.end - span.begin) == form for every token.
inline TokenizedSentence tokenize(std::string_view text, std::string sentence_id = {}) {
  if (trim(text).empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot tokenize empty text");
  }
  TokenizedSentence result;
  result.sentence_id = std::move(sentence_id);
  result.text = std::string(text);
  const std::string_view source = result.text;
  std::size_t i = 0;
  while (i < source.size()) {
    while (i < source.size() && std::isspace(static_cast<unsigned char>(source[i]))) ++i;
    std::size_t j = i;
    while (j < source.size() && !std::isspace(static_cast<unsigned char>(source[j]))) ++j;
    if (j > i) detail::tokenize_chunk(result.tokens, source, i, j);
    i = j;
  }
  return result;
}

inline bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return false;
  if (token == detail::kEllipsis || token == detail::kLeftDquote || token == detail::kRightDquote) {
    return true;
  }
  return std::all_of(token.begin(), token.end(),
                     [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; });
}

// Inverse of tokenize up to whitespace: removes the space before closing
// punctuation and clitics, and after opening brackets and quotes.
inline std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  bool attach_next = true;
  bool in_quote = false;
  for (const auto& token : tokens) {
    const std::string lower = to_lower(token);
    bool attach_prev = false;
    bool opens = false;
    if (token == "\"") {
      if (in_quote) {
        attach_prev = true;
      } else {
        opens = true;
      }
      in_quote = !in_quote;
    } else if (token == "(" || token == detail::kLeftDquote) {
      opens = true;
    } else if (token == "." || token == "," || token == "?" || token == "!" || token == ";" ||
               token == ":" || token == ")" || token == detail::kRightDquote ||
               token == detail::kEllipsis ||
               (token.size() > 1 && std::all_of(token.begin(), token.end(),
                                                [](char c) { return c == '.'; }))) {
      attach_prev = true;
    } else if (lower == "n't" ||
               std::find(detail::kClitics.begin(), detail::kClitics.end(), lower) !=
                   detail::kClitics.end()) {
      attach_prev = true;
    }
    if (!out.empty() && !attach_prev && !attach_next) out.push_back(' ');
    out += token;
    attach_next = opens;
  }
  return out;
}

}  // namespace funcprobe
