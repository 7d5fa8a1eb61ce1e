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

#include "funcprobe/mutate.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "test_corpora.hpp"

namespace funcprobe {
namespace {

const char kEllipsis[] = "\xE2\x80\xA6";

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

// Tokens outside the changed spans must be untouched. Holds for the
// one-token-for-one-token mutators.
void ExpectComplementUntouched(const MutationRecord& m) {
  const auto before = tokenize(m.original.first).words();
  const auto after = tokenize(m.mutated.first).words();
  ASSERT_EQ(before.size(), after.size());
  std::set<std::size_t> changed;
  for (const auto& s : m.changed_spans) changed.insert(s.position);
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (changed.count(i)) {
      EXPECT_NE(to_lower(before[i]), to_lower(after[i]));
    } else {
      EXPECT_EQ(before[i], after[i]) << i;
    }
  }
}

TEST(MutateWhTest, WorkedExample) {
  Rng rng(6);
  const auto m = mutate_wh(tokenize(std::string(kEllipsis) + "a Mr. Nice Guy like Melcher, who is now 46"), rng);
  EXPECT_EQ(m.mutated.first, std::string(kEllipsis) + "a Mr. Nice Guy like Melcher, what is now 46");
  EXPECT_TRUE(m.is_mutated);
  EXPECT_EQ(m.rng_seed, 6u);
  ASSERT_EQ(m.changed_spans.size(), 1u);
  EXPECT_EQ(m.changed_spans[0].old_tokens, std::vector<std::string>{"who"});
  EXPECT_EQ(m.changed_spans[0].new_tokens, std::vector<std::string>{"what"});
}

TEST(MutateWhTest, PreservesCapitalization) {
  Rng rng(4);
  EXPECT_EQ(mutate_wh(tokenize("Why did he leave?"), rng).mutated.first, "How did he leave?");
}

TEST(MutateWhTest, RejectsSentencesWithoutExactlyOneWhWord) {
  Rng rng(1);
  EXPECT_EQ(CodeOf([&] { mutate_wh(tokenize("The cat sat on the mat."), rng); }), ErrorCode::kNoCandidate);
  EXPECT_EQ(CodeOf([&] { mutate_wh(tokenize("Who knows what happened?"), rng); }), ErrorCode::kNoCandidate);
}

TEST(MutateWhTest, ReplacementIsADifferentWhWordAndRestIsUntouched) {
  const auto& wh = default_lexicons().wh_words;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto m = mutate_wh(tokenize("Tell me where you parked the car, please."), rng);
    const auto replaced = m.changed_spans.at(0).new_tokens.at(0);
    EXPECT_NE(replaced, "where");
    EXPECT_NE(std::find(wh.begin(), wh.end(), replaced), wh.end());
    ExpectComplementUntouched(m);
  }
}

TEST(MutateWhTest, ReplacementIsRoughlyUniformOverTheOtherFive) {
  std::map<std::string, int> counts;
  for (std::uint64_t seed = 0; seed < 5000; ++seed) {
    Rng rng(seed);
    counts[mutate_wh(tokenize("I know why."), rng).changed_spans[0].new_tokens[0]]++;
  }
  EXPECT_EQ(counts.size(), 5u);
  for (const auto& [word, n] : counts) EXPECT_NEAR(n, 1000, 120) << word;
}

TEST(MutateArticlesTest, WorkedExample) {
  Rng rng(1);
  const auto m = mutate_articles(tokenize("the case is remarkable for the cooperation"), rng);
  EXPECT_EQ(m.mutated.first, "a case is remarkable for a cooperation");
  EXPECT_EQ(m.changed_spans.size(), 2u);
}

TEST(MutateArticlesTest, ChoosesAnWithExceptions) {
  Rng rng(1);
  EXPECT_EQ(mutate_articles(tokenize("the apple and the hour"), rng).mutated.first, "an apple and an hour");
  EXPECT_EQ(mutate_articles(tokenize("The university and the union met."), rng).mutated.first,
            "A university and a union met.");
}

TEST(MutateArticlesTest, IndefiniteToDefinite) {
  Rng rng(1);
  EXPECT_EQ(mutate_articles(tokenize("A man bought an apple."), rng).mutated.first, "The man bought the apple.");
}

TEST(MutateArticlesTest, RejectsMixedOrSingleOccurrences) {
  Rng rng(1);
  EXPECT_EQ(CodeOf([&] { mutate_articles(tokenize("the cat saw a dog"), rng); }), ErrorCode::kNoCandidate);
  EXPECT_EQ(CodeOf([&] { mutate_articles(tokenize("the cat slept"), rng); }), ErrorCode::kNoCandidate);
  EXPECT_EQ(CodeOf([&] { mutate_articles(tokenize("the cat and the dog saw a bird"), rng); }),
            ErrorCode::kNoCandidate);
}

TEST(MutateArticlesTest, NoSourceArticleRemainsAndAnPrecedesVowels) {
  const auto& lex = default_lexicons();
  const std::vector<std::string> sentences = {
      "The owl and the eagle watched the hour pass.", "the apple, the unit and the egg",
      "The European union met the honest man.", "The idea of the plan was the best."};
  for (const auto& text : sentences) {
    Rng rng(3);
    const auto m = mutate_articles(tokenize(text), rng);
    const auto out = tokenize(m.mutated.first);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto w = to_lower(out[i]);
      EXPECT_NE(w, "the") << m.mutated.first;
      if ((w == "a" || w == "an") && i + 1 < out.size()) {
        EXPECT_EQ(w == "an", lex.takes_an(out[i + 1])) << m.mutated.first;
      }
    }
    ExpectComplementUntouched(m);
  }
}

TEST(MutateConjunctionTest, WorkedExample) {
  Rng rng(1);
  EXPECT_EQ(mutate_conjunction(tokenize("Rooms very clean and smelled very fresh."), rng).mutated.first,
            "Rooms very clean but smelled very fresh.");
}

TEST(MutateConjunctionTest, RejectsRepeatedConjunctions) {
  Rng rng(1);
  EXPECT_EQ(CodeOf([&] { mutate_conjunction(tokenize("I came and I left and I returned"), rng); }),
            ErrorCode::kNoCandidate);
  EXPECT_EQ(CodeOf([&] { mutate_conjunction(tokenize("I came home."), rng); }), ErrorCode::kNoCandidate);
}

TEST(MutateConjunctionTest, SeedFixedSwapIsDeterministic) {
  std::set<std::string> outputs;
  for (int run = 0; run < 5; ++run) {
    Rng rng(3);
    outputs.insert(mutate_conjunction(tokenize("I came home and slept."), rng).mutated.first);
  }
  ASSERT_EQ(outputs.size(), 1u);
  EXPECT_EQ(*outputs.begin(), "I came home or slept.");
}

TEST(MutateConjunctionTest, ReplayingTheRecordedSeedReproducesTheMutation) {
  const auto s = tokenize("She tried hard but failed.");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto m = mutate_conjunction(s, rng);
    Rng replay(m.rng_seed);
    EXPECT_EQ(mutate_conjunction(s, replay), m);
    ExpectComplementUntouched(m);
  }
}

Paragraph WorkedPair() {
  return {"wiki:P1",
          {{"wiki:L1", "the forehead is gathered in a frown", SourceKind::kParagraphCorpus},
           {"wiki:L2", "the mouth is slightly parted to reveal the teeth", SourceKind::kParagraphCorpus}}};
}

TEST(EosTest, UnmutatedSplitsAtTheTrueBoundary) {
  Rng rng(1);
  const auto m = make_eos_example(WorkedPair(), 0, false, {}, rng);
  EXPECT_EQ(m.mutated.first, "the forehead is gathered in a frown");
  EXPECT_EQ(m.mutated.second, "the mouth is slightly parted to reveal the teeth");
  EXPECT_FALSE(m.is_mutated);
  EXPECT_EQ(m.mutated, m.original);
  EXPECT_TRUE(m.changed_spans.empty());
}

TEST(EosTest, WorkedMisSplitWithOffsetPlusTwo) {
  Rng rng(5);
  const auto m = make_eos_example(WorkedPair(), 0, true, {}, rng);
  EXPECT_EQ(m.mutated.first, "the forehead is gathered in a frown the mouth");
  EXPECT_EQ(m.mutated.second, "is slightly parted to reveal the teeth");
  EXPECT_EQ(m.eos, (EosSplit{7, 9}));
  EXPECT_EQ(m.changed_spans.at(0).old_tokens, (std::vector<std::string>{"the", "mouth"}));
}

TEST(EosTest, StripsPunctuationAndCapitalization) {
  Paragraph p{"p", {{"a", "Hello, World!"}, {"b", "It's \xE2\x80\x9C" "fine\xE2\x80\x9D."}}};
  Rng rng(1);
  const auto m = make_eos_example(p, 0, false, {}, rng);
  EXPECT_EQ(m.mutated.first, "hello world");
  EXPECT_EQ(m.mutated.second, "its fine");
}

TEST(EosTest, SegmentsConcatenateToTheStreamAndNeverSplitAtTheTruth) {
  const auto p = WorkedPair();
  const auto stream = eos_tokens(p.sentences[0].text + " " + p.sentences[1].text);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    const auto m = make_eos_example(p, 0, true, {}, rng);
    auto joined = eos_tokens(m.mutated.first);
    const auto tail = eos_tokens(m.mutated.second);
    joined.insert(joined.end(), tail.begin(), tail.end());
    EXPECT_EQ(joined, stream);
    EXPECT_NE(m.eos->used, m.eos->correct);
    EXPECT_GE(m.eos->used, 1u);
    EXPECT_LE(m.eos->used, stream.size() - 1);
  }
}

TEST(EosTest, RoundedNormalOffsetsHaveTheConfiguredSpread) {
  Rng rng(2024);
  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(sample_eos_offset(rng, 2.0));
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sum_sq - n * mean * mean) / (n - 1));
  EXPECT_GE(mean, -0.05);
  EXPECT_LE(mean, 0.05);
  EXPECT_GE(sd, 1.95);
  EXPECT_LE(sd, 2.10);
}

TEST(EosTest, FallsBackToAdjacentSplitWhenResamplingIsExhausted) {
  Rng rng(9);
  const auto m = make_eos_example(WorkedPair(), 0, true, EosConfig{1e-9, 5}, rng);
  EXPECT_TRUE(m.mutation_kind.starts_with("eos:fallback"));
  EXPECT_EQ(std::abs(static_cast<long>(m.eos->used) - 7), 1);
}

TEST(EosTest, Errors) {
  Rng rng(1);
  EXPECT_EQ(CodeOf([&] { make_eos_example(WorkedPair(), 1, false, {}, rng); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([&] { make_eos_example(WorkedPair(), 0, true, EosConfig{0.0, 5}, rng); }),
            ErrorCode::kInvalidArgument);
  Paragraph tiny{"t", {{"a", "Hi."}, {"b", "Go."}}};
  EXPECT_EQ(CodeOf([&] { make_eos_example(tiny, 0, true, {}, rng); }), ErrorCode::kOutOfRange);
}

NliRecord Record(const std::string& id, const std::string& p, const std::string& h) {
  return {id, {id + ":p", p, SourceKind::kNliCorpus}, {id + ":h", h, SourceKind::kNliCorpus}, {}, {}};
}

TEST(MutatePrepositionTest, WorkedExample) {
  Rng rng(46);
  const auto r = Record("m2", "With a single jerk the man's head tore free.",
                        "The man's head tore free from a single jerk.");
  const auto m = mutate_preposition(r, Side::kHypothesis, rng);
  EXPECT_EQ(m.mutated.first, r.premise.text);
  EXPECT_EQ(m.mutated.second, "The man's head tore free without a single jerk.");
  EXPECT_EQ(m.changed_spans.at(0).segment, 1);
}

TEST(MutatePrepositionTest, MultiWordPrepositionIsReplacedAsAUnit) {
  Rng rng(19);
  const auto r = Record("m3", "The car parked in front of the house.", "A car is near a house.");
  const auto m = mutate_preposition(r, Side::kPremise, rng);
  EXPECT_EQ(m.mutated.first, "The car parked behind the house.");
  EXPECT_EQ(m.changed_spans.at(0).old_tokens, (std::vector<std::string>{"in", "front", "of"}));
}

TEST(MutatePrepositionTest, LongestMatchWins) {
  const auto matches = find_lexicon_matches(tokenize("He stood in front of it and in it."),
                                            default_lexicons().prepositions);
  ASSERT_EQ(matches.size(), 2u);
  EXPECT_EQ(matches[0].entry, "in front of");
  EXPECT_EQ(matches[1].entry, "in");
}

TEST(MutatePrepositionTest, NoPrepositionIsAnError) {
  Rng rng(1);
  EXPECT_EQ(CodeOf([&] { mutate_preposition(Record("x", "Dogs bark.", "Cats sleep."), Side::kHypothesis, rng); }),
            ErrorCode::kNoCandidate);
}

TEST(MutatePrepositionTest, ReplacementDiffersAndComesFromTheList) {
  const auto& preps = default_lexicons().prepositions;
  const auto r = Record("x", "p", "She walked across the park after lunch with friends.");
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const auto m = mutate_preposition(r, Side::kHypothesis, rng);
    const auto& span = m.changed_spans.at(0);
    std::string old_entry, new_entry;
    for (const auto& t : span.old_tokens) old_entry += (old_entry.empty() ? "" : " ") + to_lower(t);
    for (const auto& t : span.new_tokens) new_entry += (new_entry.empty() ? "" : " ") + to_lower(t);
    EXPECT_NE(old_entry, new_entry);
    EXPECT_NE(std::find(preps.begin(), preps.end(), new_entry), preps.end()) << new_entry;
  }
}

TEST(SelectPairsTest, ComparativesRequireBothSides) {
  const std::vector<NliRecord> records = {Record("a", "Today there are more than 300,000.", "Today there are less than 300,000."),
                                          Record("b", "a dog", "a cat")};
  const auto out = select_pairs(records, default_lexicons().comparative_words(), true);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "a");
}

TEST(SelectPairsTest, EmptyInputGivesEmptyOutput) {
  EXPECT_TRUE(select_pairs({}, {"all"}, true).empty());
}

TEST(SelectPairsTest, QuantifierPairFromTheTable) {
  const auto out = select_pairs({Record("q", "all taken up yeah", "There are still some left")}, {"all", "some"}, true);
  EXPECT_EQ(out.size(), 1u);
}

TEST(SelectPairsTest, HypothesisOnlyWhenNotRequiringBoth) {
  const std::vector<NliRecord> records = {Record("s", "To reach it turn left up a small alleyway", "Turn right up the alleyway"),
                                          Record("t", "Turn right.", "Go home.")};
  const auto out = select_pairs(records, {"left", "right"}, false);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "s");
  EXPECT_EQ(select_pairs(records, {"LEFT"}, false).size(), 0u);  // lexicon entries are lowercase
}

TEST(NegateSentenceTest, WorkedExamples) {
  EXPECT_EQ(negate_sentence(tokenize("There are still some left")).text, "There are not still some left");
  EXPECT_EQ(negate_sentence(tokenize("Turn right up the alleyway")).text, "do not turn right up the alleyway");
  EXPECT_EQ(negate_sentence(tokenize("Today there are less than 300,000.")).text,
            "Today there are not less than 300,000.");
  EXPECT_EQ(negate_sentence(tokenize("This is a common problem.")).text, "This is not a common problem.");
}

TEST(NegateSentenceTest, DoSupportInflections) {
  EXPECT_EQ(negate_sentence(tokenize("He turns left at the lights.")).text, "He does not turn left at the lights.");
  EXPECT_EQ(negate_sentence(tokenize("The man's head tore free.")).text, "The man's head did not tear free.");
  EXPECT_EQ(negate_sentence(tokenize("They walked home.")).text, "They did not walk home.");
  EXPECT_EQ(negate_sentence(tokenize("She studies law.")).text, "She does not study law.");
}

TEST(NegateSentenceTest, DoubleNegationIsNotCollapsed) {
  EXPECT_EQ(negate_sentence(tokenize("It isn't late.")).text, "It is not n't late.");
}

TEST(NegateSentenceTest, NoVerbIsAnError) {
  EXPECT_EQ(CodeOf([&] { negate_sentence(tokenize("Blue sky over the hills.")); }), ErrorCode::kNoVerb);
}

TEST(AntonymMatchTest, WorkedExample) {
  const auto m = find_antonym_match(Record("n", "This is a common problem.", "This is an uncommon issue we are facing."));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->premise_position, 3u);
  EXPECT_EQ(m->hypothesis_position, 3u);
  EXPECT_EQ(m->pair, (WordPair{"common", "uncommon"}));
}

TEST(AntonymMatchTest, NoneAndSymmetry) {
  EXPECT_FALSE(find_antonym_match(Record("n", "The sky is blue.", "Grass grows.")).has_value());
  const auto m = find_antonym_match(Record("n", "The floor is dirty.", "The floor is clean."));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->pair, (WordPair{"dirty", "clean"}));
}

TEST(NegationPatternsTest, SixteenDistinctPatterns) {
  const auto r = Record("n", "This is a common problem.", "This is an uncommon issue we are facing.");
  const auto set = generate_negation_patterns(r, *find_antonym_match(r));
  ASSERT_EQ(set.records.size(), 16u);
  EXPECT_EQ(set.dropped, 0u);
  std::set<std::string> codes;
  std::set<std::pair<std::string, std::string>> texts;
  for (const auto& m : set.records) {
    codes.insert(m.negation->code());
    texts.insert({m.mutated.first, m.mutated.second});
  }
  EXPECT_EQ(codes.size(), 16u);
  EXPECT_EQ(texts.size(), 16u);
}

TEST(NegationPatternsTest, WorkedRows) {
  const auto r = Record("n", "This is a common problem.", "This is an uncommon issue we are facing.");
  const auto set = generate_negation_patterns(r, *find_antonym_match(r));
  std::map<std::string, MutationRecord> by_code;
  for (const auto& m : set.records) by_code[m.negation->code()] = m;

  const auto& identity = by_code.at("p:none/h:none");
  EXPECT_FALSE(identity.is_mutated);
  EXPECT_EQ(identity.mutated, identity.original);
  EXPECT_TRUE(identity.changed_spans.empty());

  EXPECT_EQ(by_code.at("p:explicit/h:none").mutated.first, "This is not a common problem.");
  EXPECT_EQ(by_code.at("p:none/h:explicit").mutated.second, "This is not an uncommon issue we are facing.");
  EXPECT_EQ(by_code.at("p:explicit/h:explicit").mutated,
            (Payload{"This is not a common problem.", "This is not an uncommon issue we are facing."}));
  EXPECT_EQ(by_code.at("p:lexical/h:none").mutated.first, "This is an uncommon problem.");
  EXPECT_EQ(by_code.at("p:none/h:both").mutated.second, "This is not a common issue we are facing.");
}

TEST(NegationPatternsTest, DropsPatternsThatCannotBeExplicitlyNegated) {
  const auto r = Record("n", "A clean room.", "The room is dirty.");
  const auto set = generate_negation_patterns(r, *find_antonym_match(r));
  EXPECT_EQ(set.dropped, 8u);  // explicit and both on the verbless premise
  EXPECT_EQ(set.records.size(), 8u);
}

TEST(NegationPatternsTest, RejectsAMatchThatDoesNotFit) {
  const auto r = Record("n", "The floor is dirty.", "The floor is clean.");
  EXPECT_EQ(CodeOf([&] { generate_negation_patterns(r, AntonymMatch{0, 0, {"the", "the"}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(BuildProbingSetTest, HalfOfTheItemsAreMutated) {
  const auto corpus = testing::WhCorpus(100);
  BuildConfig cfg;
  cfg.target_size = 100;
  const auto result = build_probing_set(Task::kWhWords, corpus, cfg, 7);
  ASSERT_EQ(result.records.size(), 100u);
  EXPECT_EQ(result.candidates_found, 100u);
  int mutated = 0;
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    mutated += r.mutation.is_mutated;
    EXPECT_EQ(r.mutation.is_mutated, i % 2 == 0);
    EXPECT_EQ(r.expected_label, r.mutation.is_mutated ? "unnatural" : "natural");
    if (!r.mutation.is_mutated) EXPECT_EQ(r.mutation.mutated, r.mutation.original);
  }
  EXPECT_EQ(mutated, 50);
}

TEST(BuildProbingSetTest, OddTargetRoundsMutatedCountDown) {
  BuildConfig cfg;
  cfg.target_size = 5;
  const auto result = build_probing_set(Task::kWhWords, testing::WhCorpus(20), cfg, 7);
  int mutated = 0;
  for (const auto& r : result.records) mutated += r.mutation.is_mutated;
  EXPECT_EQ(result.records.size(), 5u);
  EXPECT_EQ(mutated, 2);
}

TEST(BuildProbingSetTest, InsufficientCandidatesNamesTheCount) {
  BuildConfig cfg;
  cfg.target_size = 100;
  try {
    build_probing_set(Task::kWhWords, testing::WhCorpus(3), cfg, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientCandidates);
    EXPECT_NE(std::string(e.what()).find("found 3 candidates"), std::string::npos);
  }
}

TEST(BuildProbingSetTest, TaskAndCorpusFormatMustAgree) {
  BuildConfig cfg;
  cfg.target_size = 2;
  EXPECT_EQ(CodeOf([&] { build_probing_set(Task::kNegation, testing::WhCorpus(10), cfg, 1); }),
            ErrorCode::kTaskMismatch);
}

std::string Serialize(const BuildResult& r) {
  std::ostringstream out;
  write_dataset(out, r.records);
  return out.str();
}

TEST(BuildProbingSetTest, SameSeedSameBytesAcrossThreadCounts) {
  const auto corpus = testing::WhCorpus(300);
  BuildConfig cfg;
  cfg.target_size = 200;
  cfg.threads = 1;
  const auto one = Serialize(build_probing_set(Task::kWhWords, corpus, cfg, 11));
  cfg.threads = 4;
  const auto four = Serialize(build_probing_set(Task::kWhWords, corpus, cfg, 11));
  EXPECT_EQ(one, four);
  EXPECT_NE(one, Serialize(build_probing_set(Task::kWhWords, corpus, cfg, 12)));
}

TEST(BuildProbingSetTest, NegationEmitsWholeGroups) {
  BuildConfig cfg;
  cfg.target_size = 48;
  const auto result = build_probing_set(Task::kNegation, testing::NegationCorpus(10), cfg, 3);
  ASSERT_EQ(result.records.size(), 48u);
  std::map<std::string, int> per_source;
  for (const auto& r : result.records) per_source[r.id().substr(0, r.id().find('#'))]++;
  EXPECT_EQ(per_source.size(), 3u);
  for (const auto& [id, n] : per_source) EXPECT_EQ(n, 16) << id;
}

TEST(BuildProbingSetTest, EosAndNliTasksBuild) {
  BuildConfig cfg;
  cfg.target_size = 10;
  const auto eos = build_probing_set(Task::kEndOfSentence, testing::ParagraphCorpus(10), cfg, 5);
  ASSERT_EQ(eos.records.size(), 10u);
  for (const auto& r : eos.records) {
    if (r.mutation.is_mutated) EXPECT_NE(r.mutation.eos->used, r.mutation.eos->correct);
  }
  const auto neg = testing::NegationCorpus(20);
  for (Task t : {Task::kPrepositions, Task::kQuantification}) {
    cfg.target_size = 4;
    Corpus c = neg;
    for (auto& r : c.nli) {
      r.premise.text = "All of the " + r.premise.text.substr(4) + " in town";
      r.hypothesis.text = "Some of the " + r.hypothesis.text.substr(4, r.hypothesis.text.size() - 5) + " at night.";
    }
    const auto built = build_probing_set(t, c, cfg, 5);
    ASSERT_EQ(built.records.size(), 4u) << task_name(t);
    EXPECT_TRUE(built.records[0].mutation.is_mutated);
    EXPECT_FALSE(built.records[0].expected_label.has_value());
    EXPECT_EQ(built.records[1].expected_label, "contradiction");
  }
}

TEST(DatasetFormatTest, RecordsSurviveJsonRoundTrip) {
  BuildConfig cfg;
  cfg.target_size = 32;
  auto records = build_probing_set(Task::kNegation, testing::NegationCorpus(5), cfg, 3).records;
  auto eos = build_probing_set(Task::kEndOfSentence, testing::ParagraphCorpus(5), BuildConfig{.target_size = 4}, 3).records;
  records.insert(records.end(), eos.begin(), eos.end());
  records[0].final_label = "contradiction";
  records[0].unanimous = true;
  records[0].n_responses = 3;
  std::stringstream buffer;
  write_dataset(buffer, records);
  EXPECT_EQ(read_dataset(buffer), records);
}

}  // namespace
}  // namespace funcprobe
