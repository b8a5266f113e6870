"""The identification cascade.

script gate -> tokenize -> lexicon stage (both languages at once) ->
suffix/rule stage (Magahi checked first, per token) -> verdict.

Weights are integers: trigram 3, bigram 2, unigram 1, suffix table 1,
rule 1 + priority. Lexicon frequencies are used only to break exact ties.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from magahi_lid.errors import ConfigError, LidError, ParseError
from magahi_lid.lexicon import (
    TARGETS,
    Language,
    NgramDictionary,
    UnigramLexicon,
    build_ngram_dictionary,
    build_unigram_lexicon,
    exclusive_lexicons,
    load_lexicon,
    load_ngrams,
    lookup_unigram,
    match_multiword,
    save_lexicon,
    save_ngrams,
)
from magahi_lid.suffixrules import (
    Evidence,
    EvidenceSource,
    RuleSet,
    SuffixTable,
    default_rules,
    extract_suffixes,
    load_rules,
    load_suffixes,
    match_suffix,
    rule_evidence,
    save_rules,
    save_suffixes,
)
from magahi_lid.textcore import Token, detect_script, detokenize, normalize, tokenize

MODEL_FILES = (
    "hin.unigrams.tsv",
    "mag.unigrams.tsv",
    "hin.ngrams.tsv",
    "mag.ngrams.tsv",
    "hin.suffixes.tsv",
    "mag.suffixes.tsv",
    "rules.tsv",
    "thresholds.tsv",
)


class Stage(str, enum.Enum):
    SCRIPT_GATE = "ScriptGate"
    LEXICON = "LexiconStage"
    SUFFIX = "SuffixStage"
    FALLBACK = "Fallback"


@dataclass(frozen=True)
class Thresholds:
    min_devanagari_fraction: Fraction = Fraction(1, 2)
    decision_margin: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "min_devanagari_fraction", Fraction(self.min_devanagari_fraction))
        object.__setattr__(self, "decision_margin", Fraction(self.decision_margin))
        if not 0 < self.min_devanagari_fraction <= 1:
            raise ConfigError(f"min_devanagari_fraction must lie in (0, 1], got {self.min_devanagari_fraction}")
        if self.decision_margin < 0:
            raise ConfigError(f"decision_margin must be non-negative, got {self.decision_margin}")


@dataclass(frozen=True)
class Model:
    hin_lex: UnigramLexicon
    mag_lex: UnigramLexicon
    hin_ngrams: NgramDictionary
    mag_ngrams: NgramDictionary
    hin_suffixes: SuffixTable
    mag_suffixes: SuffixTable
    rules: RuleSet = field(default_factory=RuleSet)
    thresholds: Thresholds = field(default_factory=Thresholds)

    def __post_init__(self) -> None:
        for name in ("lex", "ngrams", "suffixes"):
            for lang in TARGETS:
                res = getattr(self, f"{lang.value}_{name}")
                if res.language is not lang:
                    raise ConfigError(f"{lang.value}_{name} is tagged {res.language.value!r}")

    def lexicon(self, lang: Language) -> UnigramLexicon:
        return self.hin_lex if lang is Language.HINDI else self.mag_lex

    def ngrams(self, lang: Language) -> NgramDictionary:
        return self.hin_ngrams if lang is Language.HINDI else self.mag_ngrams

    def suffixes(self, lang: Language) -> SuffixTable:
        return self.hin_suffixes if lang is Language.HINDI else self.mag_suffixes

    def with_thresholds(self, thresholds: Thresholds) -> "Model":
        return Model(
            self.hin_lex, self.mag_lex, self.hin_ngrams, self.mag_ngrams,
            self.hin_suffixes, self.mag_suffixes, self.rules, thresholds,
        )

    def scaled(self, factor: int) -> "Model":
        """Same model with every lexicon and ngram frequency multiplied by ``factor``."""
        return Model(
            self.hin_lex.scaled(factor), self.mag_lex.scaled(factor),
            self.hin_ngrams.scaled(factor), self.mag_ngrams.scaled(factor),
            self.hin_suffixes, self.mag_suffixes, self.rules, self.thresholds,
        )


Scores = dict[Language, int]


@dataclass(frozen=True)
class Verdict:
    label: Language
    stage: Stage
    scores: Scores
    evidence: tuple[Evidence, ...] = ()
    echo: str = ""
    error: str | None = None

    @property
    def score_hin(self) -> int:
        return self.scores.get(Language.HINDI, 0)

    @property
    def score_mag(self) -> int:
        return self.scores.get(Language.MAGAHI, 0)


def _zero() -> Scores:
    return {lang: 0 for lang in TARGETS}


def _tally(evidence: Iterable[Evidence]) -> Scores:
    scores = _zero()
    for ev in evidence:
        scores[ev.language] += ev.weight
    return scores


def _rel(freq: int, total: int) -> Fraction:
    return Fraction(freq, total) if total > 0 else Fraction(freq)


def score_lexicon_stage(tokens: Sequence[Token], model: Model) -> tuple[Scores, list[Evidence]]:
    """Greedy left-to-right longest-match scan against both languages.

    At each position the longest ngram found in either dictionary wins and
    every language matching at that length gets evidence; otherwise each
    lexicon containing the word gets unigram evidence.
    """
    evidence: list[Evidence] = []
    i = 0
    while i < len(tokens):
        if not tokens[i].is_devanagari:
            i += 1
            continue
        multi = {lang: match_multiword(model.ngrams(lang), tokens, i) for lang in TARGETS}
        longest = max(m.matched_length for m in multi.values())
        if longest >= 2:
            detail = " ".join(t.surface for t in tokens[i : i + longest])
            for lang, m in multi.items():
                if m.matched_length == longest:
                    rel = _rel(m.frequency, model.ngrams(lang).total)
                    evidence.append(Evidence(lang, EvidenceSource.MULTIWORD_LEX, longest, detail, i, rel))
            i += longest
            continue
        word = tokens[i].surface
        for lang in TARGETS:
            lex = model.lexicon(lang)
            m = lookup_unigram(lex, word)
            if m:
                evidence.append(Evidence(lang, EvidenceSource.UNIGRAM_LEX, 1, word, i, _rel(m.frequency, lex.total_tokens)))
        i += 1
    return _tally(evidence), evidence


def _table_evidence(word: str, i: int, own: SuffixTable, other: SuffixTable) -> list[Evidence]:
    hit = match_suffix(word, own)
    if hit is None or hit.suffix in other:
        return []
    return [Evidence(own.language, EvidenceSource.SUFFIX_TABLE, 1, hit.suffix, i)]


def token_suffix_evidence(tokens: Sequence[Token], i: int, model: Model) -> list[Evidence]:
    """Suffix-stage evidence for one token: Magahi rules and table first, Hindi only if Magahi is silent."""
    if not tokens[i].is_devanagari:
        return []
    word = tokens[i].surface
    for lang, other in ((Language.MAGAHI, Language.HINDI), (Language.HINDI, Language.MAGAHI)):
        found = rule_evidence(tokens, i, model.rules.for_language(lang))
        found += _table_evidence(word, i, model.suffixes(lang), model.suffixes(other))
        if found:
            return found
    return []


def score_suffix_stage(tokens: Sequence[Token], model: Model) -> tuple[Scores, list[Evidence]]:
    evidence: list[Evidence] = []
    for i in range(len(tokens)):
        evidence.extend(token_suffix_evidence(tokens, i, model))
    return _tally(evidence), evidence


def _decide(scores: Scores, margin: Fraction) -> Language | None:
    hin, mag = scores[Language.HINDI], scores[Language.MAGAHI]
    if max(hin, mag) > 0 and abs(hin - mag) > margin:
        return Language.HINDI if hin > mag else Language.MAGAHI
    return None


def _tie_break(evidence: Iterable[Evidence]) -> Language | None:
    weight = {lang: Fraction(0) for lang in TARGETS}
    for ev in evidence:
        if ev.source in (EvidenceSource.UNIGRAM_LEX, EvidenceSource.MULTIWORD_LEX):
            weight[ev.language] += ev.rel_freq
    hin, mag = weight[Language.HINDI], weight[Language.MAGAHI]
    if hin == mag:
        return None
    return Language.HINDI if hin > mag else Language.MAGAHI


def classify(text: str | bytes, model: Model) -> Verdict:
    normalized = normalize(text)
    tokens = tokenize(normalized)
    echo = detokenize(tokens, normalized)
    margin = model.thresholds.decision_margin

    report = detect_script(normalized)
    if report.devanagari_fraction < model.thresholds.min_devanagari_fraction:
        return Verdict(Language.OTHER, Stage.SCRIPT_GATE, _zero(), (), echo)

    lex_scores, lex_ev = score_lexicon_stage(tokens, model)
    label = _decide(lex_scores, margin)
    if label is not None:
        return Verdict(label, Stage.LEXICON, lex_scores, tuple(lex_ev), echo)

    suf_scores, suf_ev = score_suffix_stage(tokens, model)
    scores = {lang: lex_scores[lang] + suf_scores[lang] for lang in TARGETS}
    evidence = tuple(lex_ev + suf_ev)
    if max(scores.values()) == 0:
        return Verdict(Language.OTHER, Stage.FALLBACK, scores, evidence, echo)
    label = _decide(scores, margin) or _tie_break(lex_ev) or Language.OTHER
    return Verdict(label, Stage.SUFFIX, scores, evidence, echo)


def _classify_safe(line: str | bytes, model: Model) -> Verdict:
    try:
        return classify(line, model)
    except LidError as exc:
        return Verdict(Language.OTHER, Stage.FALLBACK, _zero(), (), "", error=str(exc))


def classify_batch(lines: Iterable[str | bytes], model: Model, workers: int = 1) -> list[Verdict]:
    """One verdict per line, in input order. Per-line failures land in ``Verdict.error``."""
    lines = list(lines)
    if workers <= 1 or len(lines) < 2:
        return [_classify_safe(line, model) for line in lines]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda line: _classify_safe(line, model), lines))


# -- model directory ---------------------------------------------------------


def build_model(
    hin_corpus: Iterable[str | bytes],
    mag_corpus: Iterable[str | bytes],
    *,
    max_n: int = 3,
    exclusive: bool = False,
    rules: RuleSet | None = None,
    thresholds: Thresholds | None = None,
) -> Model:
    """Count every resource from raw one-sentence-per-line corpora."""
    corpora = {Language.HINDI: list(hin_corpus), Language.MAGAHI: list(mag_corpus)}
    lex = {lang: build_unigram_lexicon(lines, lang) for lang, lines in corpora.items()}
    if exclusive:
        lex[Language.HINDI], lex[Language.MAGAHI] = exclusive_lexicons(lex[Language.HINDI], lex[Language.MAGAHI])
    ngrams = {lang: build_ngram_dictionary(lines, lang, max_n) for lang, lines in corpora.items()}
    suffixes = {lang: extract_suffixes(lines, lang) for lang, lines in corpora.items()}
    return Model(
        lex[Language.HINDI], lex[Language.MAGAHI],
        ngrams[Language.HINDI], ngrams[Language.MAGAHI],
        suffixes[Language.HINDI], suffixes[Language.MAGAHI],
        default_rules() if rules is None else rules,
        thresholds or Thresholds(),
    )



def save_thresholds(thresholds: Thresholds, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"min_devanagari_fraction\t{thresholds.min_devanagari_fraction}\n")
        fh.write(f"decision_margin\t{thresholds.decision_margin}\n")


def load_thresholds(path: str | Path) -> Thresholds:
    values: dict[str, Fraction] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ParseError("expected '<key>\\t<value>'", lineno, str(path))
            key, value = fields
            if key not in ("min_devanagari_fraction", "decision_margin"):
                raise ParseError(f"unknown threshold {key!r}", lineno, str(path))
            try:
                values[key] = Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"threshold value {value!r} is not a number", lineno, str(path)) from None
    try:
        return Thresholds(**values)
    except ConfigError as exc:
        raise ParseError(str(exc), path=str(path)) from None


def save_model(model: Model, model_dir: str | Path) -> None:
    d = Path(model_dir)
    d.mkdir(parents=True, exist_ok=True)
    for lang in TARGETS:
        save_lexicon(model.lexicon(lang), d / f"{lang.value}.unigrams.tsv")
        save_ngrams(model.ngrams(lang), d / f"{lang.value}.ngrams.tsv")
        save_suffixes(model.suffixes(lang), d / f"{lang.value}.suffixes.tsv")
    save_rules(model.rules, d / "rules.tsv")
    save_thresholds(model.thresholds, d / "thresholds.tsv")


def load_model(model_dir: str | Path) -> Model:
    """Load all eight model files; raises FileNotFoundError or ParseError before any classification."""
    d = Path(model_dir)
    missing = [name for name in MODEL_FILES if not (d / name).is_file()]
    if missing:
        raise FileNotFoundError(f"model directory {d} is missing: {', '.join(missing)}")
    parts = {}
    for lang in TARGETS:
        for name, loader in (("lex", load_lexicon), ("ngrams", load_ngrams), ("suffixes", load_suffixes)):
            fname = f"{lang.value}.{'unigrams' if name == 'lex' else name}.tsv"
            res = loader(d / fname)
            if res.language is not lang:
                raise ParseError(f"language tag {res.language.value!r} does not match file name", 1, str(d / fname))
            parts[f"{lang.value}_{name}"] = res
    return Model(**parts, rules=load_rules(d / "rules.tsv"), thresholds=load_thresholds(d / "thresholds.tsv"))
