"""Regenerate the bundled desk-scale fixture corpora under fixtures/.

Sentences are drawn from small hand-written templates built around the
contrasts the identifier relies on: Magahi noun particles, -go
classifiers, -l-/-b- verb morphology and -an plurals versus Hindi ergative
ne, -ga futures and progressive auxiliaries. Output is deterministic for a
given seed.

    python scripts/make_fixtures.py [--seed 13] [--out fixtures]
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

# -- Magahi ------------------------------------------------------------------

MAG_NAMES_P = ["रमवा", "सितवा", "मोहनमा", "गीतवा", "सोहनमा", "रधिया", "मुनिया", "कलुआ"]
MAG_NOUNS_P = [
    "घरवा", "अमवा", "लइकवा", "लइकिया", "बकरिया", "गइया", "किताबवा", "बजरवा", "खेतवा",
    "पनिया", "बेटवा", "बेटिया", "कुतवा", "गछिया", "नदिया", "रोटिया", "भतवा", "दूधवा", "मरदवा",
]
MAG_NOUNS_BASE = ["लइका", "लइकी", "आम", "बकरी", "किताब", "रोटी", "गाछ", "मरद", "बेटा", "गाय"]
MAG_PLURALS = ["लइकन", "मरदन", "बेटन", "बकरियन", "कुतन"]
MAG_CLF = ["एगो", "दुगो", "तीनगो", "चारगो", "पाँचगो"]
MAG_PRON = ["ऊ", "हम", "हमनी", "तू", "अपने", "ओकरा", "हमरा", "तोहरा"]
MAG_POSS = ["ओकर", "हमर", "तोहर", "हमनी के"]
MAG_PLACE = ["घरवा में", "बजरवा में", "खेतवा में", "गउँआ में", "नदिया किनारे", "हिआँ", "हुआँ"]
MAG_PAST_T = ["देलक", "देलकइ", "कहलक", "खइलक", "पढ़लक", "लेलक", "देखलक", "बोललक", "कइलक", "देखलथिन", "कहलथिन"]
MAG_PAST_I = ["गेल", "गेलइ", "गेलन", "अइलइ", "अइलन", "सुतलो", "भेल", "बइठलइ", "दउड़लइ"]
MAG_FUT = ["जइबइ", "देबो", "खइबइ", "सुतबअ", "करबइ", "जइबो", "पढ़बइ", "देखबइ", "अइबथिन", "कहबो"]
MAG_AUX = ["हे", "हथिन", "ही", "हइ"]
MAG_STEM = ["जा", "खा", "पढ़", "सुत", "आव", "देख"]
MAG_ADJ = ["करिका", "करिकी", "बड़का", "छोटका", "निम्मन", "उज्जर"]
MAG_TIME = ["आज", "कल", "अखनी", "भोरे", "सँझिया"]
MAG_FIXED = [
    "हमरा जरूर {fut} ।",
    "ऊ अइध हथुन ।",
    "कलेजा काढ़ के {past_t} ।",
    "आउ ऊ {place} {past_i} ।",
    "का हो {name} , {place} {past_i} ?",
]

MAG_TEMPLATES = [
    "{name} {name2} के {noun} {past_t} ।",
    "{noun} {place} {past_i} ।",
    "{pron} {place} {fut} ।",
    "{name} {stem} {aux} ।",
    "{clf} {base} {past_i} ।",
    "{adj} {noun} {place} {past_i} ।",
    "{plural} {time} {place} {past_i} ।",
    "{poss} {noun} {past_i} आउ {name} {past_t} ।",
    "{time} {pron} {noun} {past_t} ।",
    "{pron} {clf} {base} {past_t} ।",
    "{name} {time} {fut} आउ {noun} {past_t} ।",
    "{plural} {noun} {past_t} ।",
]

# -- Hindi -------------------------------------------------------------------

HIN_NAMES = ["राम", "सीता", "मोहन", "गीता", "सोहन", "राधा", "मुनिया", "कल्लू"]
HIN_NOUNS = [
    "घर", "आम", "लड़का", "लड़की", "बकरी", "गाय", "किताब", "बाजार", "खेत", "पानी", "बेटा",
    "बेटी", "कुत्ता", "पेड़", "नदी", "रोटी", "चावल", "दूध", "आदमी", "औरत", "सरकार", "शहर",
]
HIN_PLURALS = ["लड़के", "लड़कियाँ", "आदमियों", "मजदूरों", "किसानों", "औरतें"]
HIN_NUM = ["एक", "दो", "तीन", "चार", "पाँच"]
HIN_PRON_ERG = ["उसने", "मैंने", "हमने", "तुमने", "आपने"]
HIN_PRON = ["वह", "मैं", "हम", "तुम", "आप", "वे"]
HIN_POSS = ["उसका", "मेरा", "हमारा", "तुम्हारा", "अपना"]
HIN_PLACE = ["घर में", "बाजार में", "खेत में", "गांव में", "नदी के किनारे", "यहाँ", "वहाँ", "शहर में"]
HIN_PAST_T = ["दिया", "किया", "कहा", "खाया", "पढ़ा", "लिया", "देखा", "बनाया", "खरीदा"]
HIN_PAST_I = ["गया", "गई", "गए", "आया", "आई", "सोया", "बैठा", "दौड़ा", "पहुंच गया"]
HIN_FUT = ["जाएगा", "देगा", "खाएगा", "सोएगा", "करेगा", "पढ़ेगी", "देखेंगे", "आएंगे", "जाएगी", "कहेगा"]
HIN_STEM = ["जा", "खा", "पढ़", "सो", "आ", "देख"]
HIN_PROG = ["रहा है", "रही है", "रहे हैं", "रहा था", "रही थी", "रहे थे"]
HIN_ADJ = ["काला", "काली", "बड़ा", "छोटा", "अच्छा", "सफेद"]
HIN_TIME = ["आज", "कल", "अभी", "सुबह", "शाम को"]
HIN_FIXED = [
    "{pron} {place} पहुंच गया ।",
    "ठेका मजदूरों के {noun} {past_i} ।",
    "बैठकर खाने का {noun} अच्छा है ।",
    "{name} ने बहुत {noun} {past_t} ।",
    "क्या {name} {place} {past_i} ?",
]

HIN_TEMPLATES = [
    "{name} ने {name2} को {noun} {past_t} ।",
    "{noun} {place} {past_i} ।",
    "{pron} {place} {fut} ।",
    "{name} {stem} {prog} ।",
    "{num} {plural} {place} {past_i} ।",
    "{adj} {noun} {place} है ।",
    "{erg} {time} {noun} {past_t} ।",
    "{poss} {noun} {past_i} और {name} ने {noun2} {past_t} ।",
    "{time} {pron} {noun} नहीं {fut} ।",
    "{plural} ने {num} {noun} {past_t} ।",
    "{name} {time} {fut} और {noun} भी {fut} ।",
    "{pron} {stem} {prog} और {name} {stem} {prog} ।",
]

# Hand-written held-out sentences: Magahi words outside the generated vocabulary,
# recognisable only by particle / verb / classifier morphology.
MAG_SUFFIX_ONLY = [
    "मोबइलवा टुटलइ ।",
    "चचवा लउटलन ।",
    "गढ़हवा भरलइ ।",
    "तीनगो मछरी बिकलइ ।",
    "फुलवा सुखलइ ।",
    "मोटरिया रुकलइ ।",
]
HIN_SUFFIX_ONLY = [
    "मोटर रुकेगी ।",
    "मछली बिकेगी ।",
    "चाचा लौटेंगे ।",
]
# Known hard cases: a named entity, a typo that
# makes Hindi look Magahi, and two short sentences built from shared words.
HARD_CASES = [
    ("mag", "का हो रामौतार ।", ""),
    ("hin", "तू कौन है/हे ।", "typo"),
    ("mag", "मात्र पचास रूपड़या।", ""),
    ("mag", "उज्जर बाल ।", ""),
]
OTHER = [
    "This is an English sentence about the weather .",
    "hello world",
    "The market opens at nine tomorrow .",
    "আমি বাড়ি যাচ্ছি ।",
    "நான் வீட்டுக்கு போகிறேன் .",
    "یہ ایک اردو جملہ ہے ۔",
    "Ram went to the market with Sita",
    "ਮੈਂ ਘਰ ਜਾ ਰਿਹਾ ਹਾਂ ।",
    "Je vais au marché demain .",
    "ನಾನು ಮನೆಗೆ ಹೋಗುತ್ತೇನೆ .",
]


def _fill(rng: random.Random, template: str, vocab: dict[str, list[str]]) -> str:
    out = template
    for key, words in vocab.items():
        while "{" + key + "}" in out:
            out = out.replace("{" + key + "}", rng.choice(words), 1)
    return out


def mag_vocab() -> dict[str, list[str]]:
    return {
        "name2": MAG_NAMES_P, "name": MAG_NAMES_P, "noun": MAG_NOUNS_P, "base": MAG_NOUNS_BASE,
        "plural": MAG_PLURALS, "clf": MAG_CLF, "pron": MAG_PRON, "poss": MAG_POSS, "place": MAG_PLACE,
        "past_t": MAG_PAST_T, "past_i": MAG_PAST_I, "fut": MAG_FUT, "aux": MAG_AUX, "stem": MAG_STEM,
        "adj": MAG_ADJ, "time": MAG_TIME,
    }


def hin_vocab() -> dict[str, list[str]]:
    return {
        "name2": HIN_NAMES, "name": HIN_NAMES, "noun2": HIN_NOUNS, "noun": HIN_NOUNS, "plural": HIN_PLURALS,
        "num": HIN_NUM, "erg": HIN_PRON_ERG, "pron": HIN_PRON, "poss": HIN_POSS, "place": HIN_PLACE,
        "past_t": HIN_PAST_T, "past_i": HIN_PAST_I, "fut": HIN_FUT, "stem": HIN_STEM, "prog": HIN_PROG,
        "adj": HIN_ADJ, "time": HIN_TIME,
    }


def generate(rng: random.Random, templates: list[str], fixed: list[str], vocab, n: int, exclude: set[str]) -> list[str]:
    pool = templates * 3 + fixed
    out: list[str] = []
    seen = set(exclude)
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 100 * n:
            raise RuntimeError("template space exhausted")
        sent = _fill(rng, rng.choice(pool), vocab)
        if sent not in seen:
            seen.add(sent)
            out.append(sent)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=13)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures")
    ap.add_argument("--train", type=int, default=320, help="training sentences per language")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)

    mag = generate(rng, MAG_TEMPLATES, MAG_FIXED, mag_vocab(), args.train, set())
    hin = generate(rng, HIN_TEMPLATES, HIN_FIXED, hin_vocab(), args.train, set())
    hard = {lang: [row for row in HARD_CASES if row[0] == lang] for lang in ("mag", "hin")}
    n_mag = 25 - len(MAG_SUFFIX_ONLY) - len(hard["mag"])
    n_hin = 25 - len(HIN_SUFFIX_ONLY) - len(hard["hin"])
    mag_test = generate(rng, MAG_TEMPLATES, [], mag_vocab(), n_mag, set(mag)) + MAG_SUFFIX_ONLY
    hin_test = generate(rng, HIN_TEMPLATES, [], hin_vocab(), n_hin, set(hin)) + HIN_SUFFIX_ONLY

    (args.out / "mag_corpus.txt").write_text("\n".join(mag) + "\n", encoding="utf-8")
    (args.out / "hin_corpus.txt").write_text("\n".join(hin) + "\n", encoding="utf-8")
    rows = [f"mag\t{s}" for s in mag_test] + [f"hin\t{s}" for s in hin_test] + [f"other\t{s}" for s in OTHER]
    rows += [f"{lang}\t{s}\t{note}" if note else f"{lang}\t{s}" for lang, s, note in HARD_CASES]
    rng.shuffle(rows)
    (args.out / "testset.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    oracle = mag[:100] + hin[:100]
    (args.out / "suffix_corpus.txt").write_text("\n".join(oracle) + "\n", encoding="utf-8")
    print(f"wrote {len(mag)} mag, {len(hin)} hin, {len(rows)} test rows, {len(oracle)} suffix-oracle lines to {args.out}")


if __name__ == "__main__":
    main()
