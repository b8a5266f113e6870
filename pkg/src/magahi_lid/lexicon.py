"""Unigram frequency lexicons and multiword (2-3 token) dictionaries.

Model files are UTF-8 TSV::

    #lang=mag<TAB>total=<N>
    <word or space-joined ngram><TAB><frequency>
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from magahi_lid.errors import ConfigError, IntegrityError, ParseError, PreconditionError
from magahi_lid.textcore import Token, normalize, tokenize


class Language(str, enum.Enum):
    HINDI = "hin"
    MAGAHI = "mag"
    OTHER = "other"

    @classmethod
    def parse(cls, tag: str) -> "Language":
        try:
            return cls(tag.strip().lower())
        except ValueError:
            raise ValueError(f"unknown language tag {tag!r}") from None

    @property
    def display(self) -> str:
        return {"hin": "Hindi", "mag": "Magahi", "other": "Other"}[self.value]


TARGETS = (Language.HINDI, Language.MAGAHI)


class MatchSource(str, enum.Enum):
    UNIGRAM = "Unigram"
    BIGRAM = "Bigram"
    TRIGRAM = "Trigram"


@dataclass(frozen=True)
class MatchResult:
    matched_length: int = 0
    frequency: int = 0
    source: MatchSource | None = None

    def __bool__(self) -> bool:
        return self.matched_length > 0


NO_MATCH = MatchResult()
_SOURCES = {1: MatchSource.UNIGRAM, 2: MatchSource.BIGRAM, 3: MatchSource.TRIGRAM}


def _check_target(language: Language) -> Language:
    language = Language(language)
    if language not in TARGETS:
        raise ConfigError(f"resources exist only for hin/mag, not {language.value!r}")
    return language


@dataclass(frozen=True)
class UnigramLexicon:
    language: Language
    entries: dict[str, int] = field(default_factory=dict)
    total_tokens: int = 0

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def scaled(self, factor: int) -> "UnigramLexicon":
        return UnigramLexicon(
            self.language, {w: f * factor for w, f in self.entries.items()}, self.total_tokens * factor
        )


@dataclass(frozen=True)
class NgramDictionary:
    language: Language
    entries: dict[tuple[str, ...], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def scaled(self, factor: int) -> "NgramDictionary":
        return NgramDictionary(self.language, {k: f * factor for k, f in self.entries.items()})


def _line_tokens(corpus: Iterable[str | bytes]) -> Iterator[list[Token]]:
    for line in corpus:
        yield tokenize(normalize(line))


def build_unigram_lexicon(corpus: Iterable[str | bytes], language: Language) -> UnigramLexicon:
    """Count every non-hidden Devanagari word token.

    ``total_tokens`` counts all word tokens (punctuation excluded), so it
    equals the frequency sum only for an all-Devanagari corpus.
    """
    language = _check_target(language)
    counts: Counter[str] = Counter()
    total = 0
    for tokens in _line_tokens(corpus):
        for tok in tokens:
            if not tok.is_word:
                continue
            total += 1
            if tok.is_devanagari:
                counts[tok.surface] += 1
    return UnigramLexicon(language, dict(counts), total)


def build_ngram_dictionary(corpus: Iterable[str | bytes], language: Language, max_n: int = 3) -> NgramDictionary:
    language = _check_target(language)
    if max_n not in (2, 3):
        raise ConfigError(f"max_n must be 2 or 3, got {max_n!r}")
    counts: Counter[tuple[str, ...]] = Counter()
    for tokens in _line_tokens(corpus):
        for n in range(2, max_n + 1):
            for i in range(len(tokens) - n + 1):
                window = tokens[i : i + n]
                if all(t.is_devanagari for t in window):
                    counts[tuple(t.surface for t in window)] += 1
    return NgramDictionary(language, dict(counts))


def exclusive_lexicons(a: UnigramLexicon, b: UnigramLexicon) -> tuple[UnigramLexicon, UnigramLexicon]:
    """Drop words present in both lexicons (the optional exclusivity filter)."""
    shared = a.entries.keys() & b.entries.keys()
    return (
        UnigramLexicon(a.language, {w: f for w, f in a.entries.items() if w not in shared}, a.total_tokens),
        UnigramLexicon(b.language, {w: f for w, f in b.entries.items() if w not in shared}, b.total_tokens),
    )


def merge_lexicons(base: UnigramLexicon, extra: UnigramLexicon) -> UnigramLexicon:
    if base.language is not extra.language:
        raise ConfigError("cannot merge lexicons of different languages")
    merged = Counter(base.entries)
    merged.update(extra.entries)
    return UnigramLexicon(base.language, dict(merged), base.total_tokens + extra.total_tokens)


def lookup_unigram(lexicon: UnigramLexicon, word: str) -> MatchResult:
    freq = lexicon.entries.get(word, 0)
    return MatchResult(1, freq, MatchSource.UNIGRAM) if freq else NO_MATCH


def match_multiword(ngrams: NgramDictionary, tokens: Sequence[Token], start: int) -> MatchResult:
    """Longest ngram (trigram before bigram) starting at ``tokens[start]``."""
    if not 0 <= start < len(tokens):
        raise PreconditionError(f"start index {start} outside token sequence of length {len(tokens)}")
    for n in (3, 2):
        window = tokens[start : start + n]
        if len(window) < n or not all(t.is_devanagari for t in window):
            continue
        freq = ngrams.entries.get(tuple(t.surface for t in window), 0)
        if freq:
            return MatchResult(n, freq, _SOURCES[n])
    return NO_MATCH


# -- TSV persistence ---------------------------------------------------------


def write_tsv(path: str | Path, language: Language, total: int, rows: Iterable[tuple[str, int]]) -> None:
    """Rows are written by descending frequency, then key, for byte-stable output."""
    ordered = sorted(rows, key=lambda kv: (-kv[1], kv[0]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"#lang={Language(language).value}\ttotal={total}\n")
        for key, freq in ordered:
            fh.write(f"{key}\t{freq}\n")


def read_tsv(path: str | Path, *, default_frequency: int | None = None) -> tuple[Language | None, int | None, list[tuple[str, int, int]]]:
    """Parse a model TSV file into ``(language, total, [(key, freq, lineno)])``.

    With ``default_frequency`` set, the header is optional and a bare key
    line gets that frequency (used for importing external word lists).
    """
    path = str(path)
    language: Language | None = None
    total: int | None = None
    rows: list[tuple[str, int, int]] = []
    seen: dict[str, int] = {}
    with open(path, "rb") as fh:
        raw_lines = fh.read().split(b"\n")
    if raw_lines and raw_lines[-1] == b"":
        raw_lines.pop()
    for lineno, raw in enumerate(raw_lines, start=1):
        try:
            line = raw.decode("utf-8").rstrip("\r")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8 at byte {exc.start}", lineno, path) from None
        if lineno == 1 and line.startswith("#lang="):
            language, total = _parse_header(line, lineno, path)
            continue
        if lineno == 1 and default_frequency is None:
            raise ParseError("missing '#lang=<hin|mag>\\ttotal=<N>' header", lineno, path)
        if not line.strip():
            if default_frequency is not None:
                continue
            raise ParseError("empty data line", lineno, path)
        fields = line.split("\t")
        if len(fields) == 1 and default_frequency is not None:
            key, freq = fields[0], default_frequency
        elif len(fields) == 2:
            key = fields[0]
            if not (fields[1].isascii() and fields[1].isdigit()) or int(fields[1]) < 1:
                raise ParseError(f"frequency {fields[1]!r} is not a positive integer", lineno, path)
            freq = int(fields[1])
        else:
            raise ParseError(f"expected 2 tab-separated fields, got {len(fields)}", lineno, path)
        key = normalize(key.strip()) if default_frequency is not None else key
        if not key:
            raise ParseError("empty key", lineno, path)
        if key in seen:
            raise IntegrityError(f"{path}:line {lineno}: duplicate key {key!r} (first seen on line {seen[key]})")
        seen[key] = lineno
        rows.append((key, freq, lineno))
    return language, total, rows


def _parse_header(line: str, lineno: int, path: str) -> tuple[Language, int]:
    fields = dict(part.split("=", 1) for part in line[1:].split("\t") if "=" in part)
    try:
        language = _check_target(Language.parse(fields["lang"]))
        total = int(fields["total"])
    except (KeyError, ValueError, ConfigError) as exc:
        raise ParseError(f"bad header {line!r}: {exc}", lineno, path) from None
    if total < 0:
        raise ParseError("negative total", lineno, path)
    return language, total


def _require_header(language, total, path) -> tuple[Language, int]:
    if language is None or total is None:
        raise ParseError("missing header", 1, str(path))
    return language, total


def save_lexicon(lexicon: UnigramLexicon, path: str | Path) -> None:
    write_tsv(path, lexicon.language, lexicon.total_tokens, lexicon.entries.items())


def load_lexicon(path: str | Path) -> UnigramLexicon:
    language, total, rows = read_tsv(path)
    language, total = _require_header(language, total, path)
    for key, _, lineno in rows:
        if any(ch.isspace() for ch in key):
            raise ParseError(f"unigram key {key!r} contains whitespace", lineno, str(path))
    return UnigramLexicon(language, {k: f for k, f, _ in rows}, total)


def import_wordlist(path: str | Path, language: Language) -> UnigramLexicon:
    """Load an external word list (e.g. a morphological analyser dump).

    Accepts the lexicon TSV format with or without header; lines holding
    only a word get frequency 1.
    """
    _, _, rows = read_tsv(path, default_frequency=1)
    entries = {k: f for k, f, _ in rows}
    return UnigramLexicon(_check_target(language), entries, sum(entries.values()))


def save_ngrams(ngrams: NgramDictionary, path: str | Path) -> None:
    write_tsv(path, ngrams.language, ngrams.total, ((" ".join(k), f) for k, f in ngrams.entries.items()))


def load_ngrams(path: str | Path) -> NgramDictionary:
    language, total, rows = read_tsv(path)
    language, total = _require_header(language, total, path)
    entries: dict[tuple[str, ...], int] = {}
    for key, freq, lineno in rows:
        parts = tuple(key.split(" "))
        if len(parts) not in (2, 3) or not all(parts):
            raise ParseError(f"ngram key {key!r} must hold 2 or 3 single-space-separated words", lineno, str(path))
        entries[parts] = freq
    if sum(entries.values()) != total:
        raise IntegrityError(f"{path}: header total {total} does not match frequency sum {sum(entries.values())}")
    return NgramDictionary(language, entries)
