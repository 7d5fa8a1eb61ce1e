#!/usr/bin/env python3
#
# Copyright 2026 The funcprobe Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Writes the small synthetic corpora under data/sample/."""
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "sample"
rng = random.Random(7)

NAMES = ["Anna", "Ben", "Carla", "David", "Elena", "Farid", "Grace", "Hugo", "Ines", "Jonas",
         "Kiri", "Lena", "Marco", "Nadia", "Omar", "Priya", "Quinn", "Rosa", "Sam", "Tariq"]
NOUNS = ["book", "car", "garden", "house", "letter", "market", "river", "song", "train", "window",
         "bridge", "coffee", "doctor", "engine", "forest", "island", "lamp", "museum", "orange", "umbrella"]
ADJS = ["old", "new", "big", "small", "quiet", "busy", "cold", "warm", "long", "short"]
PLACES = ["the station", "the park", "the office", "the beach", "the library", "the hotel", "the square"]
TIMES = ["yesterday", "last week", "on Monday", "in the morning", "after lunch", "at night", "this year"]
VERBS_PAST = ["visited", "painted", "found", "opened", "cleaned", "sold", "watched", "described", "fixed"]
SUBJECTS = ["the teacher", "my brother", "the driver", "our neighbour", "the children", "the mayor", "a tourist"]


def np_():
    return rng.choice(["the", "a"]) + " " + rng.choice(ADJS) + " " + rng.choice(NOUNS)


def fix_article(s):
    words = s.split(" ")
    for i in range(len(words) - 1):
        if words[i].lower() == "a" and words[i + 1][0] in "aeiou":
            words[i] = words[i][0] + "n" if words[i][0] == "A" else "an"
    return " ".join(words)


def cap(s):
    return s[0].upper() + s[1:]


def sentence():
    kind = rng.randrange(8)
    n, v, p, t, s = rng.choice(NAMES), rng.choice(VERBS_PAST), rng.choice(PLACES), rng.choice(TIMES), rng.choice(SUBJECTS)
    if kind == 0:
        out = f"{n} asked {s} who {v} {np_()} {t}."
    elif kind == 1:
        out = f"{cap(s)} wondered where {n} {v} {np_()}."
    elif kind == 2:
        out = f"{n} {v} {np_()} and {s} waited at {p}."
    elif kind == 3:
        out = f"{cap(s)} {v} {np_()} but {n} stayed near {p}."
    elif kind == 4:
        q = rng.choice(["all", "some", "many", "most", "few", "several"])
        out = f"{cap(q)} of the visitors {v} {np_()} {t}."
    elif kind == 5:
        c = rng.choice(["bigger", "smaller", "older", "more expensive", "faster"])
        out = f"{cap(np_())} is {c} than the one {n} {v} {t}."
    elif kind == 6:
        w = rng.choice(["left", "right", "behind", "above", "below", "inside", "outside"])
        out = f"{n} put {np_()} {w} the door {t}."
    else:
        out = f"{cap(s)} {v} {np_()} at {p} {t}."
    return fix_article(out)


def write(name, text):
    (OUT / name).write_text(text, encoding="utf-8")


OUT.mkdir(parents=True, exist_ok=True)
write("sentences.txt", "".join(sentence() + "\n" for _ in range(1200)))
paras = []
for _ in range(200):
    paras.append("\n".join(sentence() for _ in range(rng.randrange(3, 6))))
write("paragraphs.txt", "\n\n".join(paras) + "\n")

ANTONYMS = [("clean", "dirty"), ("happy", "sad"), ("cold", "hot"), ("early", "late"), ("easy", "difficult"),
            ("open", "closed"), ("quiet", "loud"), ("safe", "dangerous"), ("cheap", "expensive"), ("full", "empty")]
PREPS = ["in", "at", "near", "behind", "under", "beside", "inside", "outside"]


def nli_rows(prefix, count, genre_pool):
    rows = []
    for i in range(count):
        kind = rng.randrange(6)
        n, noun, place, t = rng.choice(NAMES), rng.choice(NOUNS), rng.choice(PLACES), rng.choice(TIMES)
        if kind == 0:
            a, b = rng.choice(ANTONYMS)
            prem = f"The {noun} {rng.choice(['in', 'near'])} {place} was {a} {t}."
            if rng.random() < 0.5:
                hyp, label = f"The {noun} was not {a} {t}.", "contradiction"
            else:
                hyp, label = f"The {noun} was {b} {t}.", "contradiction"
            if rng.random() < 0.3:
                hyp, label = f"The {noun} was {a}.", "entailment"
        elif kind == 1:
            pr = rng.choice(PREPS)
            prem = fix_article(f"{n} left {np_()} {pr} {place} {t}.")
            if rng.random() < 0.5:
                hyp, label = f"{n} left something {pr} {place}.", "entailment"
            else:
                hyp, label = f"{n} was {pr} {place} {rng.choice(TIMES)}.", "neutral"
        elif kind == 3:
            big, small = rng.choice([("bigger", "smaller"), ("older", "younger"), ("faster", "slower")])
            m = rng.choice(NAMES)
            prem = f"{n}'s {noun} is {big} than {m}'s {noun}."
            hyp, label = rng.choice([(f"{m}'s {noun} is {small} than {n}'s {noun}.", "entailment"),
                                     (f"{m}'s {noun} is {big} than {n}'s {noun}.", "contradiction")])
        elif kind == 4:
            q = rng.choice(["all", "some", "most", "none", "every"])
            if q == "every":
                prem = f"Every visitor at {place} {rng.choice(VERBS_PAST)} a {noun} {t}."
            else:
                prem = f"{cap(q)} of the visitors at {place} {rng.choice(VERBS_PAST)} a {noun} {t}."
            hyp, label = rng.choice([(f"Some visitors at {place} saw a {noun}.", "neutral"),
                                     (f"None of the visitors were at {place} {t}.", "contradiction"),
                                     (f"Many visitors were at {place}.", "neutral")])
            prem = fix_article(prem)
        elif kind == 5:
            w, o = rng.choice([("left", "right"), ("above", "below"), ("inside", "outside"), ("behind", "in front of")])
            prem = f"{n} stood {w} the {noun} {t}."
            hyp, label = rng.choice([(f"{n} stood {w} the {noun}.", "entailment"),
                                     (f"{n} stood {o} the {noun} {t}.", "contradiction")])
        else:
            prem = fix_article(f"{n} {rng.choice(VERBS_PAST)} {np_()} at {place}.")
            hyp, label = rng.choice([(f"{n} was at {place}.", "entailment"),
                                     (f"{n} never went to {place}.", "contradiction"),
                                     (f"{n} enjoyed the visit to {place}.", "neutral")])
        rows.append(f"{prefix}{i:04d}\t{prem}\t{hyp}\t{label}\t{rng.choice(genre_pool)}")
    return "id\tpremise\thypothesis\tlabel\tgenre\n" + "\n".join(rows) + "\n"


write("nli.tsv", nli_rows("s", 600, ["fiction", "travel", "telephone"]))
write("nli_train.tsv", nli_rows("t", 900, ["fiction", "travel", "government", "slate"]))
