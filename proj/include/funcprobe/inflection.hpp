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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "funcprobe/text.hpp"

namespace funcprobe {

enum class VerbForm { kBase, kThirdSingular, kPast };

struct VerbAnalysis {
  std::string base;
  VerbForm form = VerbForm::kBase;
};

namespace detail {

// Common English verbs. Irregular past forms are listed explicitly; the rest
// are inflected by the regular spelling rules below.
inline constexpr std::array<std::string_view, 168> kVerbBases = {
    "add",     "agree",   "allow",   "appear",  "apply",    "arrive",   "ask",      "become",
    "begin",   "believe", "belong",  "break",   "bring",    "build",    "buy",      "call",
    "carry",   "catch",   "change",  "choose",  "close",    "come",     "consider", "contain",
    "continue", "cost",   "cover",   "create",  "cry",      "cut",      "decide",   "deny",
    "depend",  "die",     "draw",    "drink",   "drive",    "drop",     "eat",      "enjoy",
    "exist",   "expect",  "explain", "fall",    "feel",     "fight",    "fill",     "find",
    "finish",  "fly",     "follow",  "forget",  "get",      "give",     "go",       "grow",
    "happen",  "hate",    "hear",    "help",    "hide",     "hit",      "hold",     "hope",
    "hurt",    "include", "join",    "jump",    "keep",     "kill",     "know",     "laugh",
    "lead",    "learn",   "leave",   "let",     "like",     "listen",   "live",     "look",
    "lose",    "love",    "make",    "marry",   "matter",   "mean",     "meet",     "miss",
    "move",    "need",    "offer",   "open",    "owe",      "pass",     "pay",      "plan",
    "play",    "prefer",  "provide", "pull",    "push",     "put",      "rain",     "raise",
    "reach",   "read",    "remain",  "remember", "reply",   "report",   "require",  "ride",
    "ring",    "rise",    "run",     "say",     "see",      "seem",     "sell",     "send",
    "serve",   "set",     "shake",   "shoot",   "show",     "shut",     "sing",     "sink",
    "sit",     "sleep",   "smile",   "speak",   "spend",    "stand",    "start",    "stay",
    "steal",   "stop",    "study",   "suggest", "swim",     "take",     "talk",     "teach",
    "tear",    "tell",    "think",   "throw",   "touch",    "travel",   "try",      "turn",
    "understand", "use",  "visit",   "wait",    "wake",     "walk",     "want",     "wash",
    "watch",   "wear",    "win",     "wish",    "work",     "worry",    "write",    "reveal",
};

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 74> kIrregularPast = {{
    {"become", "became"}, {"begin", "began"},   {"break", "broke"},     {"bring", "brought"},
    {"build", "built"},   {"buy", "bought"},    {"catch", "caught"},    {"choose", "chose"},
    {"come", "came"},     {"cost", "cost"},     {"cut", "cut"},         {"draw", "drew"},
    {"drink", "drank"},   {"drive", "drove"},   {"eat", "ate"},         {"fall", "fell"},
    {"feel", "felt"},     {"fight", "fought"},  {"find", "found"},      {"fly", "flew"},
    {"forget", "forgot"}, {"get", "got"},       {"give", "gave"},       {"go", "went"},
    {"grow", "grew"},     {"hear", "heard"},    {"hide", "hid"},        {"hit", "hit"},
    {"hold", "held"},     {"hurt", "hurt"},     {"keep", "kept"},       {"know", "knew"},
    {"lead", "led"},      {"leave", "left"},    {"let", "let"},         {"lose", "lost"},
    {"make", "made"},     {"mean", "meant"},    {"meet", "met"},        {"pay", "paid"},
    {"put", "put"},       {"read", "read"},     {"ride", "rode"},       {"ring", "rang"},
    {"rise", "rose"},     {"run", "ran"},       {"say", "said"},        {"see", "saw"},
    {"sell", "sold"},     {"send", "sent"},     {"set", "set"},         {"shake", "shook"},
    {"shoot", "shot"},    {"shut", "shut"},     {"sing", "sang"},       {"sink", "sank"},
    {"sit", "sat"},       {"sleep", "slept"},   {"speak", "spoke"},     {"spend", "spent"},
    {"stand", "stood"},   {"steal", "stole"},   {"swim", "swam"},       {"take", "took"},
    {"teach", "taught"},  {"tear", "tore"},     {"tell", "told"},       {"think", "thought"},
    {"throw", "threw"},   {"understand", "understood"}, {"wake", "woke"}, {"wear", "wore"},
    {"win", "won"},       {"write", "wrote"},
}};

// Past forms that double the final consonant.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kDoubledPast = {{
    {"drop", "dropped"}, {"plan", "planned"}, {"stop", "stopped"}, {"prefer", "preferred"},
}};

inline bool is_vowel(char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; }

inline std::string third_singular(std::string_view base) {
  std::string b(base);
  if (b == "go" || b == "do") return b + "es";
  if (b.size() >= 2 && b.back() == 'y' && !is_vowel(b[b.size() - 2])) {
    return b.substr(0, b.size() - 1) + "ies";
  }
  if (b.ends_with("s") || b.ends_with("x") || b.ends_with("z") || b.ends_with("ch") ||
      b.ends_with("sh")) {
    return b + "es";
  }
  return b + "s";
}

inline std::string regular_past(std::string_view base) {
  std::string b(base);
  for (const auto& [v, past] : kDoubledPast) {
    if (v == b) return std::string(past);
  }
  if (b.ends_with("e")) return b + "d";
  if (b.size() >= 2 && b.back() == 'y' && !is_vowel(b[b.size() - 2])) {
    return b.substr(0, b.size() - 1) + "ied";
  }
  return b + "ed";
}

inline const std::unordered_map<std::string, VerbAnalysis>& verb_form_table() {
  static const auto table = [] {
    std::unordered_map<std::string, VerbAnalysis> t;
    for (auto base : kVerbBases) {
      const std::string b(base);
      std::string past = regular_past(b);
      for (const auto& [v, p] : kIrregularPast) {
        if (v == base) past = std::string(p);
      }
      // Base forms win over identical past forms ("cut", "put", "read").
      t.try_emplace(b, VerbAnalysis{b, VerbForm::kBase});
      t.try_emplace(third_singular(b), VerbAnalysis{b, VerbForm::kThirdSingular});
      t.try_emplace(past, VerbAnalysis{b, VerbForm::kPast});
    }
    return t;
  }();
  return table;
}

}  // namespace detail

inline std::optional<VerbAnalysis> analyze_verb(std::string_view word) {
  const auto& table = detail::verb_form_table();
  if (auto it = table.find(to_lower(word)); it != table.end()) return it->second;
  return std::nullopt;
}

}  // namespace funcprobe
