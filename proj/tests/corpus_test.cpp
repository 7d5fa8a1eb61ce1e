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

#include "funcprobe/corpus.hpp"

#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"

namespace funcprobe {
namespace {

namespace fs = std::filesystem;

Corpus Parse(const std::string& text, CorpusFormat format) {
  std::istringstream in(text);
  return parse_corpus(in, format, "mem");
}

TEST(LoadCorpusTest, LinesFormatGivesOneSentencePerLine) {
  const auto corpus = Parse("one\ntwo two\nthree\n", CorpusFormat::kLines);
  ASSERT_EQ(corpus.sentences.size(), 3u);
  EXPECT_EQ(corpus.sentences[1].text, "two two");
  EXPECT_EQ(corpus.sentences[2].id, "mem:L3");
}

TEST(LoadCorpusTest, ParagraphFixtureCountedByHand) {
  const auto corpus = load_corpus(FUNCPROBE_FIXTURES "/two_paragraphs.txt", CorpusFormat::kParagraphs);
  ASSERT_EQ(corpus.paragraphs.size(), 2u);
  EXPECT_EQ(corpus.paragraphs[0].sentences.size(), 4u);
  EXPECT_EQ(corpus.paragraphs[1].sentences.size(), 2u);
  EXPECT_EQ(corpus.paragraphs[1].sentences[0].id, "two_paragraphs:L6");
  EXPECT_EQ(corpus.paragraphs[1].sentences[0].source, SourceKind::kParagraphCorpus);
}

TEST(LoadCorpusTest, NliTabularParsesLabelsAndGenre) {
  const auto corpus = load_corpus(FUNCPROBE_FIXTURES "/nli_small.tsv", CorpusFormat::kNliTabular);
  ASSERT_EQ(corpus.nli.size(), 2u);
  EXPECT_EQ(corpus.nli[0].gold_label, NliLabel::kContradiction);
  EXPECT_EQ(corpus.nli[1].genre, "fiction");
  EXPECT_EQ(corpus.nli[1].hypothesis.text, "The man's head tore free from a single jerk.");
}

TEST(LoadCorpusTest, MalformedNliRowNamesTheLine) {
  try {
    Parse("id\tpremise\thypothesis\tlabel\tgenre\nx1\tonly premise\n", CorpusFormat::kNliTabular);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("got 2"), std::string::npos);
  }
}

TEST(LoadCorpusTest, MissingHeaderIsAParseError) {
  EXPECT_THROW(Parse("x1\ta\tb\tneutral\tg\n", CorpusFormat::kNliTabular), Error);
}

TEST(LoadCorpusTest, DuplicateNliIdIsRejected) {
  try {
    Parse("id\tpremise\thypothesis\tlabel\tgenre\nx\ta\tb\t\t\nx\tc\td\t\t\n", CorpusFormat::kNliTabular);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateId);
  }
}

TEST(LoadCorpusTest, UnknownLabelIsRejected) {
  EXPECT_THROW(Parse("id\tpremise\thypothesis\tlabel\tgenre\nx\ta\tb\tmaybe\t\n", CorpusFormat::kNliTabular),
               Error);
}

TEST(LoadCorpusTest, SaveThenLoadIsStructurallyEqual) {
  const fs::path dir = fs::temp_directory_path() / "funcprobe_corpus_test";
  fs::create_directories(dir);
  for (auto [file, format] : {std::pair{"two_paragraphs.txt", CorpusFormat::kParagraphs},
                              std::pair{"nli_small.tsv", CorpusFormat::kNliTabular},
                              std::pair{"two_paragraphs.txt", CorpusFormat::kLines}}) {
    const auto first = load_corpus(fs::path(FUNCPROBE_FIXTURES) / file, format);
    save_corpus(first, dir / "copy.txt");
    const auto second = load_corpus(dir / "copy.txt", format, first.name);
    EXPECT_TRUE(structurally_equal(first, second)) << file;
  }
  fs::remove_all(dir);
}

TEST(LoadCorpusTest, MissingFileIsAnIoError) {
  EXPECT_THROW(load_corpus("/nonexistent/corpus.txt", CorpusFormat::kLines), Error);
}

}  // namespace
}  // namespace funcprobe
