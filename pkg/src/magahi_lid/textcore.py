"""Unicode normalization, script detection, tokenization and grapheme splitting.

Everything here is a pure function of its arguments. Offsets in token spans
are code point offsets into the *normalized* text.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import regex

from magahi_lid.errors import DecodeError, IntegrityError, PreconditionError

ZWNJ = "‌"
ZWJ = "‍"
DANDAS = frozenset("।॥")

_JOINERS = {ord(ZWNJ): None, ord(ZWJ): None}
_GRAPHEME_RE = regex.compile(r"\X")


class ScriptClass(enum.Enum):
    DEVANAGARI = "Devanagari"
    LATIN = "Latin"
    DIGIT = "Digit"
    PUNCTUATION = "Punctuation"
    OTHER_SCRIPT = "OtherScript"

    @property
    def is_letter(self) -> bool:
        return self in _LETTER_CLASSES


_LETTER_CLASSES = frozenset({ScriptClass.DEVANAGARI, ScriptClass.LATIN, ScriptClass.OTHER_SCRIPT})


def _in_devanagari_block(cp: int) -> bool:
    return 0x0900 <= cp <= 0x097F or 0xA8E0 <= cp <= 0xA8FF


def char_class(ch: str) -> ScriptClass:
    """Classify a single code point. Total over all of Unicode."""
    if ch in DANDAS:
        return ScriptClass.PUNCTUATION
    category = unicodedata.category(ch)
    if category == "Nd":
        return ScriptClass.DIGIT
    if _in_devanagari_block(ord(ch)):
        return ScriptClass.DEVANAGARI
    if category[0] in "PSZC":
        return ScriptClass.PUNCTUATION
    if category[0] == "N":
        # letter-like numerals (Roman numerals, fractions) carry no script evidence
        return ScriptClass.DIGIT
    if "LATIN" in unicodedata.name(ch, ""):
        return ScriptClass.LATIN
    return ScriptClass.OTHER_SCRIPT


def word_class(word: str) -> ScriptClass:
    """Majority letter class of ``word``.

    Devanagari wins ties; among the other letter classes Latin beats
    OtherScript. Words without letters are Digit if they contain a digit,
    otherwise Punctuation.
    """
    counts = Counter(char_class(ch) for ch in word)
    letters = {c: n for c, n in counts.items() if c.is_letter}
    if letters:
        dev = letters.get(ScriptClass.DEVANAGARI, 0)
        best = max(
            (ScriptClass.LATIN, ScriptClass.OTHER_SCRIPT),
            key=lambda c: letters.get(c, 0),
        )
        if dev >= letters.get(best, 0):
            return ScriptClass.DEVANAGARI
        return best
    if counts.get(ScriptClass.DIGIT):
        return ScriptClass.DIGIT
    return ScriptClass.PUNCTUATION


def normalize(text: str | bytes) -> str:
    """NFC-compose ``text`` and drop ZWJ/ZWNJ.

    Bytes are decoded as strict UTF-8; a bad sequence raises
    :class:`DecodeError` carrying the byte offset.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DecodeError(exc.start, exc.reason) from None
    return unicodedata.normalize("NFC", text.translate(_JOINERS))


@dataclass(frozen=True)
class Token:
    surface: str
    script: ScriptClass
    span: tuple[int, int]
    hidden: bool = field(init=False)

    def __post_init__(self) -> None:
        if not self.surface:
            raise PreconditionError("token surface must be non-empty")
        object.__setattr__(self, "hidden", self.script.is_letter and self.script is not ScriptClass.DEVANAGARI)

    @property
    def is_word(self) -> bool:
        return self.script is not ScriptClass.PUNCTUATION

    @property
    def is_devanagari(self) -> bool:
        return self.script is ScriptClass.DEVANAGARI


@dataclass(frozen=True)
class ScriptReport:
    total_letter_tokens: int
    devanagari_fraction: Fraction
    per_class_counts: dict[ScriptClass, int]


def detect_script(text: str) -> ScriptReport:
    counts: Counter[ScriptClass] = Counter(word_class(w) for w in text.split())
    letter_tokens = sum(n for c, n in counts.items() if c.is_letter)
    dev = counts.get(ScriptClass.DEVANAGARI, 0)
    fraction = Fraction(dev, letter_tokens) if letter_tokens else Fraction(0)
    return ScriptReport(letter_tokens, fraction, dict(counts))


def _is_edge_punct(ch: str) -> bool:
    return char_class(ch) is ScriptClass.PUNCTUATION


def tokenize(text: str) -> list[Token]:
    """Split on whitespace, then peel leading/trailing punctuation off each chunk.

    Each peeled punctuation character becomes its own token; punctuation
    inside a word (``है/हे``) stays in the word.
    """
    tokens: list[Token] = []
    for m in re.finditer(r"\S+", text):
        chunk, start = m.group(), m.start()
        lo, hi = 0, len(chunk)
        while lo < hi and _is_edge_punct(chunk[lo]):
            lo += 1
        while hi > lo and _is_edge_punct(chunk[hi - 1]):
            hi -= 1
        for i in range(lo):
            tokens.append(Token(chunk[i], ScriptClass.PUNCTUATION, (start + i, start + i + 1)))
        if lo < hi:
            word = chunk[lo:hi]
            tokens.append(Token(word, word_class(word), (start + lo, start + hi)))
        for i in range(hi, len(chunk)):
            tokens.append(Token(chunk[i], ScriptClass.PUNCTUATION, (start + i, start + i + 1)))
    return tokens


def detokenize(tokens: Sequence[Token], original: str) -> str:
    """Rebuild the normalized ``original`` from token spans and the gaps between them."""
    original = normalize(original)
    parts: list[str] = []
    pos = 0
    for tok in tokens:
        start, end = tok.span
        if start < pos or end <= start or end > len(original):
            raise IntegrityError(f"span {tok.span} out of range or overlapping (cursor at {pos}, length {len(original)})")
        if original[start:end] != tok.surface:
            raise IntegrityError(f"token {tok.surface!r} does not match text at span {tok.span}")
        gap = original[pos:start]
        if gap.strip():
            raise IntegrityError(f"non-whitespace text {gap!r} not covered by any token")
        parts.append(gap)
        parts.append(tok.surface)
        pos = end
    tail = original[pos:]
    if tail.strip():
        raise IntegrityError(f"non-whitespace text {tail!r} not covered by any token")
    parts.append(tail)
    return "".join(parts)


def grapheme_split(word: str) -> list[str]:
    if not word:
        raise PreconditionError("grapheme_split needs a non-empty word")
    return _GRAPHEME_RE.findall(word)


def word_tokens(tokens: Iterable[Token]) -> list[Token]:
    """Tokens that count toward sentence length (everything but punctuation)."""
    return [t for t in tokens if t.is_word]
