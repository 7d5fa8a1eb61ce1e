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

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "funcprobe/error.hpp"
#include "funcprobe/text.hpp"

namespace funcprobe {

enum class SourceKind { kSentenceCorpus, kParagraphCorpus, kNliCorpus };

enum class NliLabel { kEntailment, kNeutral, kContradiction };

inline std::string_view nli_label_name(NliLabel label) {
  switch (label) {
    case NliLabel::kEntailment: return "entailment";
    case NliLabel::kNeutral: return "neutral";
    case NliLabel::kContradiction: return "contradiction";
  }
  return "";
}

inline std::optional<NliLabel> parse_nli_label(std::string_view name) {
  if (name == "entailment") return NliLabel::kEntailment;
  if (name == "neutral") return NliLabel::kNeutral;
  if (name == "contradiction") return NliLabel::kContradiction;
  return std::nullopt;
}

struct Sentence {
  std::string id;
  std::string text;
  SourceKind source = SourceKind::kSentenceCorpus;
};

struct Paragraph {
  std::string id;
  std::vector<Sentence> sentences;
};

struct NliRecord {
  std::string id;
  Sentence premise;
  Sentence hypothesis;
  std::optional<NliLabel> gold_label;
  std::optional<std::string> genre;
};

enum class CorpusFormat { kLines, kParagraphs, kNliTabular };

inline std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "lines") return CorpusFormat::kLines;
  if (name == "paragraphs") return CorpusFormat::kParagraphs;
  if (name == "nli-tabular") return CorpusFormat::kNliTabular;
  return std::nullopt;
}

// Exactly one of the three vectors is populated, according to `format`.
// Immutable after load.
struct Corpus {
  std::string name;
  CorpusFormat format = CorpusFormat::kLines;
  std::vector<Sentence> sentences;
  std::vector<Paragraph> paragraphs;
  std::vector<NliRecord> nli;
};

namespace detail {

inline std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline Sentence make_sentence(std::string id, std::string_view text, SourceKind source,
                              std::size_t line_no) {
  const auto trimmed = trim(text);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": empty sentence", id);
  }
  return {std::move(id), std::string(trimmed), source};
}

}  // namespace detail

// Parses corpus text. Ids are derived from (name, line number) except for the
// NLI format, which carries an id column.
inline Corpus parse_corpus(std::istream& in, CorpusFormat format, const std::string& name) {
  Corpus corpus;
  corpus.name = name;
  corpus.format = format;
  std::unordered_set<std::string> seen;
  const auto claim = [&](const std::string& id, std::size_t line_no) {
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "line " + std::to_string(line_no) + ": duplicate id '" + id + "'", id);
    }
  };

  std::string raw;
  std::size_t line_no = 0;
  switch (format) {
    case CorpusFormat::kLines:
      while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::strip_cr(raw);
        if (trim(line).empty()) continue;
        std::string id = name + ":L" + std::to_string(line_no);
        claim(id, line_no);
        corpus.sentences.push_back(
            detail::make_sentence(std::move(id), line, SourceKind::kSentenceCorpus, line_no));
      }
      break;
    case CorpusFormat::kParagraphs: {
      Paragraph current;
      const auto flush = [&] {
        if (!current.sentences.empty()) corpus.paragraphs.push_back(std::move(current));
        current = Paragraph{};
      };
      while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::strip_cr(raw);
        if (trim(line).empty()) {
          flush();
          continue;
        }
        if (current.sentences.empty()) {
          current.id = name + ":P" + std::to_string(corpus.paragraphs.size() + 1);
          claim(current.id, line_no);
        }
        std::string id = name + ":L" + std::to_string(line_no);
        claim(id, line_no);
        current.sentences.push_back(
            detail::make_sentence(std::move(id), line, SourceKind::kParagraphCorpus, line_no));
      }
      flush();
      break;
    }
    case CorpusFormat::kNliTabular: {
      if (!std::getline(in, raw)) {
        throw Error(ErrorCode::kParse, "line 1: missing header row");
      }
      ++line_no;
      const auto header = detail::split_tabs(detail::strip_cr(raw));
      const std::vector<std::string> expected = {"id", "premise", "hypothesis", "label", "genre"};
      if (header != expected) {
        throw Error(ErrorCode::kParse,
                    "line 1: header must be id, premise, hypothesis, label, genre");
      }
      while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::strip_cr(raw);
        if (trim(line).empty()) continue;
        const auto cols = detail::split_tabs(line);
        if (cols.size() != 5) {
          throw Error(ErrorCode::kParse,
                      "line " + std::to_string(line_no) + ": expected 5 tab-separated columns, got " +
                          std::to_string(cols.size()),
                      cols.front());
        }
        NliRecord record;
        record.id = std::string(trim(cols[0]));
        if (record.id.empty()) {
          throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": empty id");
        }
        claim(record.id, line_no);
        record.premise = detail::make_sentence(record.id + ":p", cols[1], SourceKind::kNliCorpus, line_no);
        record.hypothesis =
            detail::make_sentence(record.id + ":h", cols[2], SourceKind::kNliCorpus, line_no);
        const auto label = trim(cols[3]);
        if (!label.empty() && label != "-") {
          record.gold_label = parse_nli_label(label);
          if (!record.gold_label) {
            throw Error(ErrorCode::kParse,
                        "line " + std::to_string(line_no) + ": unknown label '" + std::string(label) + "'",
                        record.id);
          }
        }
        if (const auto genre = trim(cols[4]); !genre.empty()) record.genre = std::string(genre);
        corpus.nli.push_back(std::move(record));
      }
      break;
    }
  }
  return corpus;
}

inline Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                          std::optional<std::string> name = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return parse_corpus(in, format, name.value_or(path.stem().string()));
}

inline void write_corpus(std::ostream& out, const Corpus& corpus) {
  switch (corpus.format) {
    case CorpusFormat::kLines:
      for (const auto& s : corpus.sentences) out << s.text << '\n';
      break;
    case CorpusFormat::kParagraphs:
      for (std::size_t p = 0; p < corpus.paragraphs.size(); ++p) {
        if (p > 0) out << '\n';
        for (const auto& s : corpus.paragraphs[p].sentences) out << s.text << '\n';
      }
      break;
    case CorpusFormat::kNliTabular:
      out << "id\tpremise\thypothesis\tlabel\tgenre\n";
      for (const auto& r : corpus.nli) {
        out << r.id << '\t' << r.premise.text << '\t' << r.hypothesis.text << '\t'
            << (r.gold_label ? nli_label_name(*r.gold_label) : "") << '\t' << r.genre.value_or("")
            << '\n';
      }
      break;
  }
}

inline void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_corpus(out, corpus);
}

// Equality of content and shape. Line-derived ids are not compared because
// they depend on where blank lines sat in the source file.
inline bool structurally_equal(const Corpus& a, const Corpus& b) {
  if (a.format != b.format) return false;
  const auto same_sentences = [](const std::vector<Sentence>& x, const std::vector<Sentence>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].text != y[i].text || x[i].source != y[i].source) return false;
    }
    return true;
  };
  if (!same_sentences(a.sentences, b.sentences)) return false;
  if (a.paragraphs.size() != b.paragraphs.size()) return false;
  for (std::size_t i = 0; i < a.paragraphs.size(); ++i) {
    if (!same_sentences(a.paragraphs[i].sentences, b.paragraphs[i].sentences)) return false;
  }
  if (a.nli.size() != b.nli.size()) return false;
  for (std::size_t i = 0; i < a.nli.size(); ++i) {
    const auto& x = a.nli[i];
    const auto& y = b.nli[i];
    if (x.id != y.id || x.premise.text != y.premise.text || x.hypothesis.text != y.hypothesis.text ||
        x.gold_label != y.gold_label || x.genre != y.genre) {
      return false;
    }
  }
  return true;
}

}  // namespace funcprobe
