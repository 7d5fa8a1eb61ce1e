#!/usr/bin/env python3
#
# Copyright 2026 The funcprobe Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Regenerates include/funcprobe/lexicon_data.hpp from data/lexicons/."""
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
FILES = [
    ("kWhWords", "wh_words.txt"),
    ("kConjunctions", "conjunctions.txt"),
    ("kArticles", "articles.txt"),
    ("kPrepositions", "prepositions.txt"),
    ("kComparatives", "comparatives.txt"),
    ("kQuantifiers", "quantifiers.txt"),
    ("kSpatialWords", "spatial.txt"),
    ("kAntonyms", "antonyms.tsv"),
    ("kAnExceptions", "an_exceptions.txt"),
]

header = (ROOT / "include/funcprobe/error.hpp").read_text().split("#pragma once")[0]
out = [header + "#pragma once\n",
       "// Generated by tools/embed_lexicons.py from data/lexicons/. Do not edit.\n",
       "#include <string_view>\n",
       "namespace funcprobe::lexicon_data {\n"]
for name, filename in FILES:
    text = (ROOT / "data/lexicons" / filename).read_text()
    out.append(f'inline constexpr std::string_view {name} = R"lex({text})lex";\n')
out.append("}  // namespace funcprobe::lexicon_data\n")
(ROOT / "include/funcprobe/lexicon_data.hpp").write_text("\n".join(out))
