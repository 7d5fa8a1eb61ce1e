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
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "funcprobe/corpus.hpp"
#include "funcprobe/dataset.hpp"
#include "funcprobe/error.hpp"
#include "funcprobe/inflection.hpp"
#include "funcprobe/lexicon.hpp"
#include "funcprobe/random.hpp"
#include "funcprobe/text.hpp"

namespace funcprobe {

// Replaces tokens [first, first + count) of a sentence with `replacement`.
struct TokenEdit {
  std::size_t first = 0;
  std::size_t count = 1;
  std::string replacement;
};

// Splices edits into the source text so every character outside the edited
// spans is preserved. Edits must not overlap.
inline std::string apply_edits(const TokenizedSentence& s, std::vector<TokenEdit> edits) {
  std::sort(edits.begin(), edits.end(),
            [](const TokenEdit& a, const TokenEdit& b) { return a.first < b.first; });
  std::string out;
  std::size_t cursor = 0;
  for (const auto& e : edits) {
    const std::size_t begin = s.tokens.at(e.first).span.begin;
    const std::size_t end = s.tokens.at(e.first + e.count - 1).span.end;
    if (begin < cursor) throw Error(ErrorCode::kInvalidArgument, "overlapping token edits");
    out.append(s.text, cursor, begin - cursor);
    out += e.replacement;
    cursor = end;
  }
  out.append(s.text, cursor, std::string::npos);
  return out;
}

inline ChangedSpan span_for(const TokenizedSentence& s, const TokenEdit& e, int segment) {
  ChangedSpan span;
  span.segment = segment;
  span.position = e.first;
  for (std::size_t i = e.first; i < e.first + e.count; ++i) span.old_tokens.push_back(s[i]);
  span.new_tokens = tokenize(e.replacement).words();
  return span;
}

namespace detail {

inline bool in_list(const std::vector<std::string>& list, std::string_view word) {
  const std::string lower = to_lower(word);
  return std::find(list.begin(), list.end(), lower) != list.end();
}

inline std::vector<std::size_t> positions_of(const TokenizedSentence& s,
                                             const std::vector<std::string>& list) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_list(list, s[i])) out.push_back(i);
  }
  return out;
}

inline std::string pick_other(const std::vector<std::string>& options, std::string_view current,
                              Rng& rng) {
  std::vector<std::string> others;
  const std::string lower = to_lower(current);
  for (const auto& o : options) {
    if (o != lower) others.push_back(o);
  }
  if (others.empty()) throw Error(ErrorCode::kInvalidArgument, "lexicon has no alternative to " + lower);
  return others[rng.uniform_index(others.size())];
}

inline MutationRecord single_sentence_record(Task task, const TokenizedSentence& s,
                                             const std::vector<TokenEdit>& edits, std::string kind,
                                             std::uint64_t seed) {
  MutationRecord r;
  r.example_id = s.sentence_id;
  r.task = task;
  r.original = {s.text, {}};
  r.mutated = {apply_edits(s, edits), {}};
  r.is_mutated = true;
  for (const auto& e : edits) r.changed_spans.push_back(span_for(s, e, 0));
  r.mutation_kind = std::move(kind);
  r.rng_seed = seed;
  return r;
}

}  // namespace detail

inline MutationRecord unmutated_record(Task task, std::string example_id, Payload payload) {
  MutationRecord r;
  r.example_id = std::move(example_id);
  r.task = task;
  r.original = payload;
  r.mutated = std::move(payload);
  r.mutation_kind = "none";
  return r;
}

// ---------------------------------------------------------------------------
// Acceptability mutators
// ---------------------------------------------------------------------------

inline bool is_wh_candidate(const TokenizedSentence& s, const Lexicons& lex = default_lexicons()) {
  return detail::positions_of(s, lex.wh_words).size() == 1;
}

// Swaps the sentence's single wh-word for one of the other five.
inline MutationRecord mutate_wh(const TokenizedSentence& s, Rng& rng,
                                const Lexicons& lex = default_lexicons()) {
  const auto hits = detail::positions_of(s, lex.wh_words);
  if (hits.size() != 1) {
    throw Error(ErrorCode::kNoCandidate,
                hits.empty() ? "no wh-word in sentence" : "more than one wh-word in sentence",
                s.sentence_id);
  }
  const std::size_t i = hits.front();
  const std::string replacement = detail::pick_other(lex.wh_words, s[i], rng);
  const TokenEdit edit{i, 1, match_case(s[i], replacement)};
  return detail::single_sentence_record(Task::kWhWords, s, {edit},
                                        "wh:" + to_lower(s[i]) + "->" + replacement, rng.seed());
}

enum class ArticleClass { kDefinite, kIndefinite };

inline std::optional<ArticleClass> article_candidate_class(const TokenizedSentence& s) {
  std::size_t definite = 0;
  std::size_t indefinite = 0;
  for (const auto& t : s.tokens) {
    const auto lower = to_lower(t.form);
    if (lower == "the") ++definite;
    if (lower == "a" || lower == "an") ++indefinite;
  }
  if (definite >= 2 && indefinite == 0) return ArticleClass::kDefinite;
  if (indefinite >= 2 && definite == 0) return ArticleClass::kIndefinite;
  return std::nullopt;
}

// Swaps every article of the sentence's only article class to the other
// class, choosing a/an from the following word.
inline MutationRecord mutate_articles(const TokenizedSentence& s, Rng& rng,
                                      const Lexicons& lex = default_lexicons()) {
  const auto cls = article_candidate_class(s);
  if (!cls) {
    throw Error(ErrorCode::kNoCandidate,
                "needs two or more of 'the', or two or more of 'a'/'an', and no mix", s.sentence_id);
  }
  std::vector<TokenEdit> edits;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto lower = to_lower(s[i]);
    if (*cls == ArticleClass::kDefinite && lower == "the") {
      const bool an = i + 1 < s.size() && lex.takes_an(s[i + 1]);
      edits.push_back({i, 1, match_case(s[i], an ? "an" : "a")});
    } else if (*cls == ArticleClass::kIndefinite && (lower == "a" || lower == "an")) {
      edits.push_back({i, 1, match_case(s[i], "the")});
    }
  }
  return detail::single_sentence_record(
      Task::kDefiniteness, s, edits,
      *cls == ArticleClass::kDefinite ? "articles:definite->indefinite" : "articles:indefinite->definite",
      rng.seed());
}

inline bool is_conjunction_candidate(const TokenizedSentence& s,
                                     const Lexicons& lex = default_lexicons()) {
  return detail::positions_of(s, lex.conjunctions).size() == 1;
}

inline MutationRecord mutate_conjunction(const TokenizedSentence& s, Rng& rng,
                                         const Lexicons& lex = default_lexicons()) {
  const auto hits = detail::positions_of(s, lex.conjunctions);
  if (hits.size() != 1) {
    throw Error(ErrorCode::kNoCandidate,
                hits.empty() ? "no coordinating conjunction in sentence"
                             : "more than one coordinating conjunction in sentence",
                s.sentence_id);
  }
  const std::size_t i = hits.front();
  const std::string replacement = detail::pick_other(lex.conjunctions, s[i], rng);
  return detail::single_sentence_record(Task::kCoordination, s, {{i, 1, match_case(s[i], replacement)}},
                                        "conjunction:" + to_lower(s[i]) + "->" + replacement,
                                        rng.seed());
}

// ---------------------------------------------------------------------------
// End-of-sentence
// ---------------------------------------------------------------------------

struct EosConfig {
  double sigma = 2.0;
  int max_resamples = 100;
};

// Lowercases, drops punctuation characters and splits on whitespace.
inline std::vector<std::string> eos_tokens(std::string_view text) {
  static constexpr std::array<std::string_view, 7> kUnicodePunct = {
      "\xE2\x80\xA6", "\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x98",
      "\xE2\x80\x99", "\xE2\x80\x93", "\xE2\x80\x94"};
  std::string cleaned;
  for (std::size_t i = 0; i < text.size();) {
    bool skipped = false;
    for (auto p : kUnicodePunct) {
      if (text.substr(i, p.size()) == p) {
        i += p.size();
        skipped = true;
        break;
      }
    }
    if (skipped) continue;
    const auto c = static_cast<unsigned char>(text[i]);
    if (!std::ispunct(c)) cleaned.push_back(static_cast<char>(std::tolower(c)));
    ++i;
  }
  std::vector<std::string> out;
  std::istringstream in(cleaned);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// One pre-exclusion draw of the split offset: round(Normal(0, sigma)).
inline long sample_eos_offset(Rng& rng, double sigma) { return std::lround(rng.normal(0.0, sigma)); }

inline std::string join_words(const std::vector<std::string>& words, std::size_t begin,
                              std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += words[i];
  }
  return out;
}

// Builds the running-text pair for sentences i and i+1 of a paragraph. With
// `mutate`, the split point is drawn around the true boundary and is never the
// true boundary.
inline MutationRecord make_eos_example(const Paragraph& p, std::size_t i, bool mutate,
                                       const EosConfig& cfg, Rng& rng) {
  if (!(cfg.sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "EOS sigma must be positive");
  if (i + 1 >= p.sentences.size()) {
    throw Error(ErrorCode::kOutOfRange,
                "paragraph " + p.id + " has no sentence pair at index " + std::to_string(i), p.id);
  }
  const auto first = eos_tokens(p.sentences[i].text);
  const auto second = eos_tokens(p.sentences[i + 1].text);
  if (first.empty() || second.empty()) {
    throw Error(ErrorCode::kNoCandidate, "sentence has no words after punctuation removal", p.id);
  }
  std::vector<std::string> stream = first;
  stream.insert(stream.end(), second.begin(), second.end());
  const std::size_t total = stream.size();
  const std::size_t k = first.size();

  MutationRecord r;
  r.example_id = p.id + ":" + std::to_string(i);
  r.task = Task::kEndOfSentence;
  r.original = {join_words(stream, 0, k), join_words(stream, k, total)};
  r.rng_seed = rng.seed();
  if (!mutate) {
    r.mutated = r.original;
    r.mutation_kind = "none";
    r.eos = EosSplit{k, k};
    return r;
  }

  const auto valid = [&](long split) { return split >= 1 && split <= static_cast<long>(total) - 1; };
  std::optional<long> split;
  for (int attempt = 0; attempt < cfg.max_resamples && !split; ++attempt) {
    const long candidate = static_cast<long>(k) + sample_eos_offset(rng, cfg.sigma);
    if (candidate != static_cast<long>(k) && valid(candidate)) split = candidate;
  }
  std::string kind = "eos:sampled";
  if (!split) {
    const long sign = rng.bernoulli(0.5) ? 1 : -1;
    if (valid(static_cast<long>(k) + sign)) {
      split = static_cast<long>(k) + sign;
    } else if (valid(static_cast<long>(k) - sign)) {
      split = static_cast<long>(k) - sign;
    } else {
      throw Error(ErrorCode::kOutOfRange, "sentence pair too short for a wrong split", r.example_id);
    }
    kind = "eos:fallback";
  }
  const auto used = static_cast<std::size_t>(*split);
  r.mutated = {join_words(stream, 0, used), join_words(stream, used, total)};
  r.is_mutated = true;
  r.eos = EosSplit{k, used};
  const long offset = static_cast<long>(used) - static_cast<long>(k);
  r.mutation_kind = kind + ":" + (offset > 0 ? "+" : "") + std::to_string(offset);
  ChangedSpan moved;
  const std::size_t lo = std::min(k, used);
  const std::size_t hi = std::max(k, used);
  moved.segment = used > k ? 1 : 0;
  moved.position = used > k ? 0 : lo;
  moved.old_tokens.assign(stream.begin() + static_cast<long>(lo), stream.begin() + static_cast<long>(hi));
  moved.new_tokens = moved.old_tokens;
  r.changed_spans.push_back(std::move(moved));
  return r;
}

// ---------------------------------------------------------------------------
// NLI mutators
// ---------------------------------------------------------------------------

enum class Side { kPremise, kHypothesis };

struct LexiconMatch {
  std::size_t position = 0;
  std::size_t length = 1;
  std::string entry;
};

// Non-overlapping lexicon matches, longest entry first at each position, so
// "in front of" is not shadowed by "in".
inline std::vector<LexiconMatch> find_lexicon_matches(const TokenizedSentence& s,
                                                      const std::vector<std::string>& lexicon) {
  std::vector<std::vector<std::string>> entries;
  for (const auto& e : lexicon) {
    std::vector<std::string> words;
    std::istringstream in(e);
    for (std::string w; in >> w;) words.push_back(w);
    if (!words.empty()) entries.push_back(std::move(words));
  }
  std::vector<LexiconMatch> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::optional<LexiconMatch> best;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto& words = entries[e];
      if (i + words.size() > s.size()) continue;
      bool ok = true;
      for (std::size_t w = 0; w < words.size() && ok; ++w) ok = iequals(s[i + w], words[w]);
      if (ok && (!best || words.size() > best->length)) best = LexiconMatch{i, words.size(), lexicon[e]};
    }
    if (best) {
      out.push_back(*best);
      i += best->length;
    } else {
      ++i;
    }
  }
  return out;
}

inline const Sentence& side_of(const NliRecord& r, Side side) {
  return side == Side::kPremise ? r.premise : r.hypothesis;
}

inline Payload nli_payload(const NliRecord& r) { return {r.premise.text, r.hypothesis.text}; }

// Replaces one listed preposition on the chosen side with a different one.
inline MutationRecord mutate_preposition(const NliRecord& r, Side side, Rng& rng,
                                         const Lexicons& lex = default_lexicons()) {
  const auto s = tokenize(side_of(r, side).text, side_of(r, side).id);
  const auto matches = find_lexicon_matches(s, lex.prepositions);
  if (matches.empty()) throw Error(ErrorCode::kNoCandidate, "no listed preposition", r.id);
  const auto& target = matches[rng.uniform_index(matches.size())];
  const std::string replacement = detail::pick_other(lex.prepositions, target.entry, rng);
  const TokenEdit edit{target.position, target.length, match_case(s[target.position], replacement)};

  MutationRecord m;
  m.example_id = r.id;
  m.task = Task::kPrepositions;
  m.original = nli_payload(r);
  m.mutated = m.original;
  (side == Side::kPremise ? m.mutated.first : m.mutated.second) = apply_edits(s, {edit});
  m.is_mutated = true;
  m.changed_spans.push_back(span_for(s, edit, side == Side::kPremise ? 0 : 1));
  m.mutation_kind = "preposition:" + target.entry + "->" + replacement;
  m.rng_seed = rng.seed();
  return m;
}

inline bool contains_lexicon_word(const Sentence& s, const std::vector<std::string>& lexicon) {
  return !find_lexicon_matches(tokenize(s.text), lexicon).empty();
}

// Keeps records whose hypothesis (and premise, with require_both) contains a
// lexicon entry, matched case-insensitively on token boundaries.
inline std::vector<NliRecord> select_pairs(const std::vector<NliRecord>& records,
                                           const std::vector<std::string>& lexicon,
                                           bool require_both) {
  std::vector<NliRecord> out;
  for (const auto& r : records) {
    if (!contains_lexicon_word(r.hypothesis, lexicon)) continue;
    if (require_both && !contains_lexicon_word(r.premise, lexicon)) continue;
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Negation
// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 21> kAuxiliaries = {
    "is",   "are",  "was",   "were", "am",    "be",     "been", "has", "have", "had", "will",
    "would", "can", "could", "may",  "might", "must", "should", "do",  "does", "did"};

struct NegationEdit {
  TokenEdit edit;
  ChangedSpan span;
};

namespace detail {

inline bool is_auxiliary(std::string_view word) {
  const auto lower = to_lower(word);
  return std::find(kAuxiliaries.begin(), kAuxiliaries.end(), lower) != kAuxiliaries.end();
}

// Words after which a verb-looking token is read as a noun or infinitive.
inline bool blocks_verb_reading(std::string_view previous) {
  static constexpr std::array<std::string_view, 20> kBlockers = {
      "the", "a", "an", "my", "your", "his", "her", "its", "our", "their",
      "this", "that", "these", "those", "to", "some", "any", "no", "every", "each"};
  const auto lower = to_lower(previous);
  return std::find(kBlockers.begin(), kBlockers.end(), lower) != kBlockers.end();
}

}  // namespace detail

// Finds the explicit-negation rewrite: "not" after the first auxiliary, or
// do-support on the first verb candidate.
inline NegationEdit find_negation(const TokenizedSentence& s, int segment = 0) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!detail::is_auxiliary(s[i])) continue;
    std::string replacement = s[i] + " not";
    if (i + 1 < s.size() && s.tokens[i + 1].span.begin == s.tokens[i].span.end) replacement += ' ';
    TokenEdit edit{i, 1, replacement};
    return {edit, span_for(s, edit, segment)};
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && detail::blocks_verb_reading(s[i - 1])) continue;
    const auto verb = analyze_verb(s[i]);
    if (!verb) continue;
    std::string support = "do";
    if (verb->form == VerbForm::kThirdSingular) support = "does";
    if (verb->form == VerbForm::kPast) support = "did";
    TokenEdit edit{i, 1, support + " not " + verb->base};
    return {edit, span_for(s, edit, segment)};
  }
  throw Error(ErrorCode::kNoVerb, "no auxiliary or verb found in '" + s.text + "'", s.sentence_id);
}

inline bool can_negate(const TokenizedSentence& s) {
  try {
    find_negation(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Inserts explicit negation. Double negation is not collapsed.
inline TokenizedSentence negate_sentence(const TokenizedSentence& s) {
  const auto neg = find_negation(s);
  return tokenize(apply_edits(s, {neg.edit}), s.sentence_id);
}

struct AntonymMatch {
  std::size_t premise_position = 0;
  std::size_t hypothesis_position = 0;
  WordPair pair;  // (premise word, hypothesis word), lowercase
};

inline std::optional<AntonymMatch> find_antonym_match(const NliRecord& r,
                                                      const Lexicons& lex = default_lexicons()) {
  const auto p = tokenize(r.premise.text);
  const auto h = tokenize(r.hypothesis.text);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto other = lex.antonym_of(p[i]);
    if (!other) continue;
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (to_lower(h[j]) == *other) return AntonymMatch{i, j, {to_lower(p[i]), *other}};
    }
  }
  return std::nullopt;
}

namespace detail {

// Antonym swap at `position`, fixing a preceding a/an.
inline std::vector<TokenEdit> lexical_negation_edits(const TokenizedSentence& s, std::size_t position,
                                                     const Lexicons& lex) {
  const auto antonym = lex.antonym_of(s[position]);
  if (!antonym) throw Error(ErrorCode::kInvalidArgument, "no antonym for '" + s[position] + "'");
  std::vector<TokenEdit> edits;
  if (position > 0) {
    const auto prev = to_lower(s[position - 1]);
    if (prev == "a" || prev == "an") {
      const std::string article = lex.takes_an(*antonym) ? "an" : "a";
      if (article != prev) edits.push_back({position - 1, 1, match_case(s[position - 1], article)});
    }
  }
  edits.push_back({position, 1, match_case(s[position], *antonym)});
  return edits;
}

struct SideVariant {
  std::string text;
  std::vector<ChangedSpan> spans;
};

inline std::optional<SideVariant> side_variant(const TokenizedSentence& s, std::size_t position,
                                               NegationMutation mode, int segment, const Lexicons& lex) {
  SideVariant v{s.text, {}};
  TokenizedSentence current = s;
  if (has_lexical(mode)) {
    const auto edits = lexical_negation_edits(s, position, lex);
    v.text = apply_edits(s, edits);
    for (const auto& e : edits) v.spans.push_back(span_for(s, e, segment));
    current = tokenize(v.text, s.sentence_id);
  }
  if (has_explicit(mode)) {
    try {
      const auto neg = find_negation(current, segment);
      v.text = apply_edits(current, {neg.edit});
      v.spans.push_back(neg.span);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoVerb) throw;
      return std::nullopt;
    }
  }
  return v;
}

}  // namespace detail

struct NegationPatternSet {
  std::vector<MutationRecord> records;
  std::size_t dropped = 0;
};

// Emits every (premise, hypothesis) combination of {none, lexical, explicit,
// both}. Patterns whose explicit negation has no verb to attach to are dropped
// and counted.
inline NegationPatternSet generate_negation_patterns(const NliRecord& r, const AntonymMatch& match,
                                                     const Lexicons& lex = default_lexicons()) {
  const auto p = tokenize(r.premise.text, r.premise.id);
  const auto h = tokenize(r.hypothesis.text, r.hypothesis.id);
  if (match.premise_position >= p.size() || match.hypothesis_position >= h.size() ||
      !lex.are_antonyms(p[match.premise_position], h[match.hypothesis_position])) {
    throw Error(ErrorCode::kInvalidArgument, "antonym match does not fit the record", r.id);
  }
  NegationPatternSet out;
  for (const auto& pattern : all_negation_patterns()) {
    const auto pv = detail::side_variant(p, match.premise_position, pattern.premise, 0, lex);
    const auto hv = detail::side_variant(h, match.hypothesis_position, pattern.hypothesis, 1, lex);
    if (!pv || !hv) {
      ++out.dropped;
      continue;
    }
    MutationRecord m;
    m.example_id = r.id + "#" + pattern.code();
    m.task = Task::kNegation;
    m.original = nli_payload(r);
    m.mutated = {pv->text, hv->text};
    m.is_mutated = !(pattern == NegationPattern{});
    m.changed_spans = pv->spans;
    m.changed_spans.insert(m.changed_spans.end(), hv->spans.begin(), hv->spans.end());
    m.mutation_kind = "negation:" + pattern.code();
    m.negation = pattern;
    out.records.push_back(std::move(m));
  }
  return out;
}

// Negates the hypothesis (comparatives, quantification, spatial).
inline MutationRecord negate_hypothesis(const NliRecord& r, Task task, std::uint64_t seed) {
  const auto h = tokenize(r.hypothesis.text, r.hypothesis.id);
  const auto neg = find_negation(h, 1);
  MutationRecord m;
  m.example_id = r.id;
  m.task = task;
  m.original = nli_payload(r);
  m.mutated = {r.premise.text, apply_edits(h, {neg.edit})};
  m.is_mutated = true;
  m.changed_spans.push_back(neg.span);
  m.mutation_kind = "negate-hypothesis";
  m.rng_seed = seed;
  return m;
}

// ---------------------------------------------------------------------------
// Probing-set construction
// ---------------------------------------------------------------------------

struct BuildConfig {
  std::size_t target_size = 500;
  std::size_t min_tokens = 1;
  std::size_t max_tokens = kDefaultMaxTokens;
  EosConfig eos;
  Side preposition_side = Side::kHypothesis;
  unsigned threads = 1;
  Lexicons lexicons = default_lexicons();
};

struct BuildResult {
  std::vector<DatasetRecord> records;
  std::size_t candidates_found = 0;
  std::size_t skipped_no_verb = 0;
};

namespace detail {

// A candidate item: exactly one of the members is used, by task.
struct Candidate {
  std::string id;
  TokenizedSentence sentence;
  const Paragraph* paragraph = nullptr;
  std::size_t pair_index = 0;
  const NliRecord* nli = nullptr;
  std::optional<AntonymMatch> antonyms;
};

inline bool length_ok(const TokenizedSentence& s, const BuildConfig& cfg) {
  return s.size() >= cfg.min_tokens && s.size() <= cfg.max_tokens;
}

inline std::vector<const Sentence*> all_sentences(const Corpus& corpus) {
  std::vector<const Sentence*> out;
  for (const auto& s : corpus.sentences) out.push_back(&s);
  for (const auto& p : corpus.paragraphs) {
    for (const auto& s : p.sentences) out.push_back(&s);
  }
  return out;
}

inline void require_format(Task task, const Corpus& corpus) {
  const bool ok = [&] {
    switch (task_format(task)) {
      case TaskFormat::kSingleSentence: return corpus.format != CorpusFormat::kNliTabular;
      case TaskFormat::kSentencePair: return corpus.format == CorpusFormat::kParagraphs;
      case TaskFormat::kNli: return corpus.format == CorpusFormat::kNliTabular;
    }
    return false;
  }();
  if (!ok) {
    throw Error(ErrorCode::kTaskMismatch,
                "task " + std::string(task_name(task)) + " cannot be built from this corpus format");
  }
}

inline std::vector<Candidate> collect_candidates(Task task, const Corpus& corpus, const BuildConfig& cfg,
                                                 std::size_t& skipped_no_verb) {
  require_format(task, corpus);
  const auto& lex = cfg.lexicons;
  std::vector<Candidate> out;
  switch (task) {
    case Task::kWhWords:
    case Task::kDefiniteness:
    case Task::kCoordination:
      for (const Sentence* s : all_sentences(corpus)) {
        auto tokens = tokenize(s->text, s->id);
        if (!length_ok(tokens, cfg)) continue;
        const bool ok = task == Task::kWhWords       ? is_wh_candidate(tokens, lex)
                        : task == Task::kDefiniteness ? article_candidate_class(tokens).has_value()
                                                      : is_conjunction_candidate(tokens, lex);
        if (ok) out.push_back({s->id, std::move(tokens)});
      }
      break;
    case Task::kEndOfSentence:
      for (const auto& p : corpus.paragraphs) {
        for (std::size_t i = 0; i + 1 < p.sentences.size(); ++i) {
          if (tokenize(p.sentences[i].text).size() > cfg.max_tokens ||
              tokenize(p.sentences[i + 1].text).size() > cfg.max_tokens) {
            continue;
          }
          const auto a = eos_tokens(p.sentences[i].text);
          const auto b = eos_tokens(p.sentences[i + 1].text);
          if (a.empty() || b.empty() || a.size() + b.size() < 3) continue;
          Candidate c;
          c.id = p.id + ":" + std::to_string(i);
          c.paragraph = &p;
          c.pair_index = i;
          out.push_back(std::move(c));
        }
      }
      break;
    default: {
      for (const auto& r : corpus.nli) {
        const auto p = tokenize(r.premise.text);
        const auto h = tokenize(r.hypothesis.text);
        if (!length_ok(p, cfg) || !length_ok(h, cfg)) continue;
        Candidate c;
        c.id = r.id;
        c.nli = &r;
        bool ok = false;
        switch (task) {
          case Task::kPrepositions:
            ok = !find_lexicon_matches(cfg.preposition_side == Side::kPremise ? p : h, lex.prepositions)
                      .empty();
            break;
          case Task::kComparatives:
          case Task::kQuantification:
          case Task::kSpatial: {
            const auto words = task == Task::kComparatives     ? lex.comparative_words()
                               : task == Task::kQuantification ? lex.quantifiers
                                                               : lex.spatial_words;
            const bool both = task != Task::kSpatial;
            ok = !find_lexicon_matches(h, words).empty() &&
                 (!both || !find_lexicon_matches(p, words).empty());
            if (ok && !can_negate(h)) {
              ++skipped_no_verb;
              ok = false;
            }
            break;
          }
          case Task::kNegation: {
            c.antonyms = find_antonym_match(r, lex);
            if (!c.antonyms) break;
            ok = generate_negation_patterns(r, *c.antonyms, lex).dropped == 0;
            if (!ok) ++skipped_no_verb;
            break;
          }
          default: break;
        }
        if (ok) out.push_back(std::move(c));
      }
      break;
    }
  }
  return out;
}

inline std::vector<DatasetRecord> build_item(Task task, const Candidate& c, bool mutate,
                                             std::uint64_t seed, const BuildConfig& cfg) {
  Rng rng(seed);
  const auto& lex = cfg.lexicons;
  std::vector<DatasetRecord> out;
  if (task == Task::kNegation) {
    for (auto& m : generate_negation_patterns(*c.nli, *c.antonyms, lex).records) {
      m.rng_seed = seed;
      DatasetRecord d{std::move(m)};
      if (!d.mutation.is_mutated && c.nli->gold_label) {
        d.expected_label = std::string(nli_label_name(*c.nli->gold_label));
      }
      out.push_back(std::move(d));
    }
    return out;
  }
  DatasetRecord d;
  if (task == Task::kEndOfSentence) {
    d.mutation = make_eos_example(*c.paragraph, c.pair_index, mutate, cfg.eos, rng);
  } else if (!mutate) {
    d.mutation = c.nli ? unmutated_record(task, c.id, nli_payload(*c.nli))
                       : unmutated_record(task, c.id, {c.sentence.text, {}});
    d.mutation.rng_seed = seed;
  } else {
    switch (task) {
      case Task::kWhWords: d.mutation = mutate_wh(c.sentence, rng, lex); break;
      case Task::kDefiniteness: d.mutation = mutate_articles(c.sentence, rng, lex); break;
      case Task::kCoordination: d.mutation = mutate_conjunction(c.sentence, rng, lex); break;
      case Task::kPrepositions: d.mutation = mutate_preposition(*c.nli, cfg.preposition_side, rng, lex); break;
      default: d.mutation = negate_hypothesis(*c.nli, task, seed); break;
    }
  }
  if (is_acceptability(task)) {
    d.expected_label = expected_acceptability(d.mutation.is_mutated);
  } else if (!d.mutation.is_mutated && c.nli->gold_label) {
    d.expected_label = std::string(nli_label_name(*c.nli->gold_label));
  }
  out.push_back(std::move(d));
  return out;
}

}  // namespace detail

// Selects the task's candidates, shuffles them with the master seed and
// mutates every other item (half, rounded down) up to the target size. Each
// item's generator is seeded from (master seed, item id), so the output does
// not depend on cfg.threads. Negation emits whole 16-pattern groups.
inline BuildResult build_probing_set(Task task, const Corpus& corpus, const BuildConfig& cfg,
                                     std::uint64_t seed) {
  BuildResult result;
  auto candidates = detail::collect_candidates(task, corpus, cfg, result.skipped_no_verb);
  result.candidates_found = candidates.size();

  const std::size_t groups = task == Task::kNegation ? std::max<std::size_t>(1, cfg.target_size / 16)
                                                     : cfg.target_size;
  if (candidates.size() < groups || groups == 0) {
    throw Error(ErrorCode::kInsufficientCandidates,
                "found " + std::to_string(candidates.size()) + " candidates for task " +
                    std::string(task_name(task)) + ", need " + std::to_string(groups));
  }
  Rng order(seed);
  order.shuffle(candidates);
  candidates.resize(groups);

  std::vector<std::vector<DatasetRecord>> slots(groups);
  const std::size_t half = cfg.target_size / 2;
  std::vector<std::exception_ptr> failures(std::max(1u, cfg.threads));
  const auto work = [&](std::size_t worker, std::size_t stride) {
    try {
      for (std::size_t idx = worker; idx < groups; idx += stride) {
        const bool mutate = idx % 2 == 0 && idx / 2 < half;
        slots[idx] = detail::build_item(task, candidates[idx], mutate,
                                        derive_seed(seed, candidates[idx].id), cfg);
      }
    } catch (...) {
      failures[worker] = std::current_exception();
    }
  };
  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  for (auto& slot : slots) {
    for (auto& r : slot) result.records.push_back(std::move(r));
  }
  return result;
}

}  // namespace funcprobe
