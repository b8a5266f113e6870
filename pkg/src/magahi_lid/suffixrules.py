"""Suffix tables, cross-language suffix overlap, and the linguistic rule engine.

Suffix length is measured in extended grapheme clusters, so a consonant is
never separated from its vowel sign. A word is never counted as a suffix of
itself.

Rule files are UTF-8 TSV, one rule per line::

    <id>  <ENDS|CONTAINS|FOLLOWS>  <pattern>  <hin|mag>  <priority>  [feature]

``FOLLOWS`` patterns hold two space-separated words; the first may be ``*``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from magahi_lid.errors import ConfigError, ParseError, UndefinedRatioError
from magahi_lid.lexicon import TARGETS, Language, _check_target, _require_header, read_tsv, write_tsv
from magahi_lid.textcore import ScriptClass, Token, char_class, grapheme_split, normalize, tokenize

MAX_SUFFIX_LEN = 3
WILDCARD = "*"


# -- suffix tables -----------------------------------------------------------


@dataclass(frozen=True)
class SuffixTable:
    language: Language
    entries: dict[str, int] = field(default_factory=dict)
    max_len: int = field(default=MAX_SUFFIX_LEN, compare=False)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def __contains__(self, suffix: str) -> bool:
        return suffix in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def word_suffixes(word: str, max_len: int = MAX_SUFFIX_LEN) -> list[str]:
    """Proper suffixes of ``word``, shortest first, up to ``max_len`` clusters."""
    clusters = grapheme_split(word)
    return ["".join(clusters[-k:]) for k in range(1, min(max_len, len(clusters) - 1) + 1)]


def extract_suffixes(corpus: Iterable[str | bytes], language: Language, max_len: int = MAX_SUFFIX_LEN) -> SuffixTable:
    language = _check_target(language)
    if max_len not in (1, 2, 3):
        raise ConfigError(f"max_len must be 1, 2 or 3, got {max_len!r}")
    counts: Counter[str] = Counter()
    for line in corpus:
        for tok in tokenize(normalize(line)):
            if tok.is_devanagari:
                counts.update(word_suffixes(tok.surface, max_len))
    return SuffixTable(language, dict(counts), max_len)


@dataclass(frozen=True)
class SuffixOverlap:
    shared: int
    union: int
    only_a: int
    only_b: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.shared, self.union)

    def __float__(self) -> float:
        return float(self.ratio)


def shared_suffix_fraction(a: SuffixTable, b: SuffixTable) -> SuffixOverlap:
    """Jaccard overlap of the two tables' key sets, with the raw counts."""
    if not a.entries or not b.entries:
        raise UndefinedRatioError("shared suffix fraction is undefined for an empty table")
    ka, kb = a.entries.keys(), b.entries.keys()
    return SuffixOverlap(len(ka & kb), len(ka | kb), len(ka - kb), len(kb - ka))


@dataclass(frozen=True)
class SuffixMatch:
    suffix: str
    frequency: int
    length: int


def match_suffix(word: str, table: SuffixTable) -> SuffixMatch | None:
    for suffix in reversed(word_suffixes(word, table.max_len)):
        freq = table.entries.get(suffix)
        if freq:
            return SuffixMatch(suffix, freq, len(grapheme_split(suffix)))
    return None


def save_suffixes(table: SuffixTable, path: str | Path) -> None:
    write_tsv(path, table.language, table.total, table.entries.items())


def load_suffixes(path: str | Path) -> SuffixTable:
    language, total, rows = read_tsv(path)
    language, total = _require_header(language, total, path)
    for key, _, lineno in rows:
        if not 1 <= len(grapheme_split(key)) <= MAX_SUFFIX_LEN:
            raise ParseError(f"suffix {key!r} is not 1-{MAX_SUFFIX_LEN} grapheme clusters", lineno, str(path))
    table = SuffixTable(language, {k: f for k, f, _ in rows})
    if table.total != total:
        raise ParseError(f"header total {total} does not match frequency sum {table.total}", 1, str(path))
    return table


# -- rules -------------------------------------------------------------------


class RuleKind(str, enum.Enum):
    ENDS = "ENDS"
    CONTAINS = "CONTAINS"
    FOLLOWS = "FOLLOWS"


class EvidenceSource(str, enum.Enum):
    UNIGRAM_LEX = "UnigramLex"
    MULTIWORD_LEX = "MultiwordLex"
    SUFFIX_RULE = "SuffixRule"
    SUFFIX_TABLE = "SuffixTable"


@dataclass(frozen=True)
class Evidence:
    language: Language
    source: EvidenceSource
    weight: int
    detail: str
    position: int = -1
    # relative corpus frequency of the matched lexicon entry; 0 for non-lexicon evidence
    rel_freq: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.weight <= 0:
            raise ValueError("evidence weight must be positive")


@dataclass(frozen=True)
class Rule:
    id: str
    kind: RuleKind
    pattern: tuple[str, ...]
    language: Language
    priority: int = 0
    feature_ref: str = ""

    @property
    def weight(self) -> int:
        return 1 + self.priority

    def matches(self, tokens: Sequence[Token], i: int) -> bool:
        """Does the rule fire on ``tokens[i]``? FOLLOWS rules fire on the second word of the pair."""
        tok = tokens[i]
        if not tok.is_devanagari:
            return False
        word = tok.surface
        if self.kind is RuleKind.ENDS:
            return len(word) > len(self.pattern[0]) and word.endswith(self.pattern[0])
        if self.kind is RuleKind.CONTAINS:
            return word == self.pattern[0]
        first, second = self.pattern
        if word != second or i == 0:
            return False
        prev = tokens[i - 1]
        return prev.is_devanagari and (first == WILDCARD or prev.surface == first)

    def describe(self) -> str:
        return f"{self.id}:{self.kind.value}({' '.join(self.pattern)})"


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...] = ()

    @classmethod
    def from_rules(cls, rules: Iterable[Rule]) -> "RuleSet":
        rules = list(rules)
        seen: set[str] = set()
        for rule in rules:
            if rule.id in seen:
                raise ConfigError(f"duplicate rule id {rule.id!r}")
            seen.add(rule.id)
        # sorted() is stable, so file order survives within equal priority
        return cls(tuple(sorted(rules, key=lambda r: -r.priority)))

    def for_language(self, language: Language) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.language is language)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


def _is_devanagari_pattern(s: str) -> bool:
    return bool(s) and all(char_class(ch) is ScriptClass.DEVANAGARI for ch in s)


def parse_rule_line(line: str, lineno: int, path: str | None = None) -> Rule:
    fields = line.split("\t")
    if len(fields) not in (5, 6):
        raise ParseError(f"expected 5 tab-separated fields (id, kind, pattern, lang, priority), got {len(fields)}", lineno, path)
    rule_id, kind, pattern, lang, priority = (f.strip() for f in fields[:5])
    feature = fields[5].strip() if len(fields) == 6 else ""
    if not rule_id:
        raise ParseError("empty rule id", lineno, path)
    try:
        kind_ = RuleKind(kind.upper())
    except ValueError:
        raise ParseError(f"unknown pattern kind {kind!r}", lineno, path) from None
    try:
        language = Language.parse(lang)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, path) from None
    if language not in TARGETS:
        raise ParseError(f"rule language must be hin or mag, got {lang!r}", lineno, path)
    if not priority.isascii() or not priority.isdigit():
        raise ParseError(f"priority {priority!r} is not a non-negative integer", lineno, path)
    parts = tuple(normalize(p) for p in pattern.split())
    expected = 2 if kind_ is RuleKind.FOLLOWS else 1
    if len(parts) != expected:
        raise ParseError(f"{kind_.value} pattern needs {expected} word(s), got {pattern!r}", lineno, path)
    for k, part in enumerate(parts):
        if kind_ is RuleKind.FOLLOWS and k == 0 and part == WILDCARD:
            continue
        if not _is_devanagari_pattern(part):
            raise ParseError(f"pattern {part!r} is not Devanagari", lineno, path)
    return Rule(rule_id, kind_, parts, language, int(priority), feature)


def parse_rules(lines: Iterable[str], path: str | None = None) -> RuleSet:
    rules: list[Rule] = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rule = parse_rule_line(line, lineno, path)
        if rule.id in seen:
            raise ParseError(f"duplicate rule id {rule.id!r} (first on line {seen[rule.id]})", lineno, path)
        seen[rule.id] = lineno
        rules.append(rule)
    return RuleSet.from_rules(rules)


def load_rules(path: str | Path) -> RuleSet:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh, str(path))


def format_rule(rule: Rule) -> str:
    fields = [rule.id, rule.kind.value, " ".join(rule.pattern), rule.language.value, str(rule.priority)]
    if rule.feature_ref:
        fields.append(rule.feature_ref)
    return "\t".join(fields)


def save_rules(ruleset: RuleSet, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rule in ruleset:
            fh.write(format_rule(rule) + "\n")


def default_rules_text() -> str:
    return resources.files("magahi_lid").joinpath("data/rules.tsv").read_text(encoding="utf-8")


def default_rules() -> RuleSet:
    return parse_rules(default_rules_text().splitlines(), "<default rules>")


def rule_evidence(tokens: Sequence[Token], i: int, rules: Iterable[Rule]) -> list[Evidence]:
    return [
        Evidence(rule.language, EvidenceSource.SUFFIX_RULE, rule.weight, rule.describe(), i)
        for rule in rules
        if rule.matches(tokens, i)
    ]


def apply_rules(tokens: Sequence[Token], ruleset: RuleSet) -> list[Evidence]:
    """Evaluate every rule on every token; one Evidence per firing."""
    out: list[Evidence] = []
    for i in range(len(tokens)):
        out.extend(rule_evidence(tokens, i, ruleset.rules))
    return out
