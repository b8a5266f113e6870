from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from magahi_lid.errors import DecodeError, IntegrityError, PreconditionError
from magahi_lid.textcore import (
    ScriptClass,
    Token,
    char_class,
    detect_script,
    detokenize,
    grapheme_split,
    normalize,
    tokenize,
)

from oracles import clusters

CONSONANTS = [chr(c) for c in range(0x0915, 0x093A)]
MATRAS = [chr(c) for c in range(0x093E, 0x094D)] + ["ं", "ँ", "ः"]
VOWELS = [chr(c) for c in range(0x0905, 0x0915)]
VIRAMA = "्"


@st.composite
def aksharas(draw):
    """Well-formed Devanagari syllables: vowel, or consonant(+virama+consonant)*(+matra)."""
    if draw(st.booleans()):
        return draw(st.sampled_from(VOWELS)) + draw(st.sampled_from(["", "ं", "ँ"]))
    body = draw(st.sampled_from(CONSONANTS))
    for _ in range(draw(st.integers(0, 2))):
        body += VIRAMA + draw(st.sampled_from(CONSONANTS))
    return body + draw(st.sampled_from([""] + MATRAS))


dev_words = st.lists(aksharas(), min_size=1, max_size=6).map("".join)

TEXT_ALPHABET = (
    "कखगघचजटडतदनपबमयरलवसह" "ािीुूेैोौंँ्" "अआइउएओ" "abcXYZ" "0123" "०१२" "।॥.,!?\"'-/" "  \t" "অআ" "ட"
)
texts = st.text(alphabet=TEXT_ALPHABET, max_size=40)


def test_normalize_identity_and_empty():
    assert normalize("राम") == "राम"
    assert normalize("") == ""


def test_normalize_strips_joiners():
    text = "क्‌ष"  # ZWNJ after virama
    before = [hex(ord(c)) for c in text]
    after = [hex(ord(c)) for c in normalize(text)]
    assert "0x200c" in before
    assert after == [c for c in before if c != "0x200c"]
    assert normalize("क्‍ष") == "क्ष"


def test_normalize_is_nfc():
    assert normalize("e\u0301") == "\u00e9"
    # precomposed nukta letters are composition exclusions, so NFC splits them
    assert normalize("\u0958") == "\u0915\u093c"
    assert normalize(normalize("क़ि")) == normalize("क़ि")


def test_normalize_decode_error_names_offset():
    with pytest.raises(DecodeError) as exc:
        normalize("राम".encode() + b"\xff" + b"x")
    assert exc.value.offset == 9
    assert "byte offset 9" in str(exc.value)


@pytest.mark.parametrize(
    "ch, cls",
    [
        ("क", ScriptClass.DEVANAGARI),
        ("ा", ScriptClass.DEVANAGARI),
        ("।", ScriptClass.PUNCTUATION),
        ("॥", ScriptClass.PUNCTUATION),
        ("५", ScriptClass.DIGIT),
        ("7", ScriptClass.DIGIT),
        ("a", ScriptClass.LATIN),
        ("é", ScriptClass.LATIN),
        (",", ScriptClass.PUNCTUATION),
        (" ", ScriptClass.PUNCTUATION),
        ("অ", ScriptClass.OTHER_SCRIPT),
        ("ꣲ", ScriptClass.DEVANAGARI),  # Devanagari Extended block
    ],
)
def test_char_class(ch, cls):
    assert char_class(ch) is cls


@given(st.characters())
def test_char_class_total(ch):
    assert isinstance(char_class(ch), ScriptClass)


def test_detect_script_examples():
    assert detect_script("राम गया").devanagari_fraction == 1
    assert detect_script("hello world").devanagari_fraction == 0
    report = detect_script("राम went home")
    assert report.total_letter_tokens == 3
    assert report.devanagari_fraction == Fraction(1, 3)
    assert report.per_class_counts[ScriptClass.LATIN] == 2


def test_detect_script_empty():
    report = detect_script("")
    assert report.total_letter_tokens == 0
    assert report.devanagari_fraction == 0


@given(texts, dev_words)
def test_devanagari_fraction_monotone(text, word):
    text = normalize(text)
    before = detect_script(text).devanagari_fraction
    after = detect_script(text + " " + word).devanagari_fraction
    assert after >= before


def test_tokenize_sentence_with_danda():
    toks = tokenize("का हो रामौतार ।")
    assert [t.surface for t in toks] == ["का", "हो", "रामौतार", "।"]
    assert toks[-1].script is ScriptClass.PUNCTUATION
    assert not any(t.hidden for t in toks)


def test_tokenize_hidden_middle_token():
    toks = tokenize("राम ABC गया")
    assert [t.hidden for t in toks] == [False, True, False]
    assert toks[1].script is ScriptClass.LATIN


def test_tokenize_splits_attached_danda_and_quotes():
    toks = tokenize('"राम गया।"')
    assert [t.surface for t in toks] == ['"', "राम", "गया", "।", '"']


def test_tokenize_keeps_inner_punctuation():
    assert [t.surface for t in tokenize("तू कौन है/हे ।")] == ["तू", "कौन", "है/हे", "।"]


def test_tokenize_digits_are_not_hidden():
    toks = tokenize("२०१८ 2018 राम")
    assert [t.script for t in toks[:2]] == [ScriptClass.DIGIT, ScriptClass.DIGIT]
    assert not any(t.hidden for t in toks)


def test_majority_rule_mixed_token():
    # one stray Latin letter inside a Devanagari word keeps it Devanagari
    (tok,) = tokenize("रामx")
    assert tok.script is ScriptClass.DEVANAGARI and not tok.hidden
    (tok,) = tokenize("abcक")
    assert tok.hidden


def test_tokenize_empty():
    assert tokenize("") == []


def test_detokenize_examples():
    s = "का हो रामौतार ।"
    assert detokenize(tokenize(s), s) == s
    assert detokenize([], "") == ""


def test_detokenize_integrity_errors():
    s = "राम गया"
    toks = tokenize(s)
    with pytest.raises(IntegrityError):
        detokenize([Token("गया", ScriptClass.DEVANAGARI, (4, 99))], s)
    with pytest.raises(IntegrityError):
        detokenize(list(reversed(toks)), s)
    with pytest.raises(IntegrityError):
        detokenize(toks[:1], s)


@settings(max_examples=300)
@given(texts)
def test_token_invariants(text):
    text = normalize(text)
    toks = tokenize(text)
    last_end = -1
    for t in toks:
        assert t.surface
        start, end = t.span
        assert start >= last_end and end > start
        last_end = end
        assert text[start:end] == t.surface
        letters = [ch for ch in t.surface if char_class(ch).is_letter]
        dev = sum(char_class(ch) is ScriptClass.DEVANAGARI for ch in letters)
        # hidden iff it has letters and Devanagari is not the (tie-winning) majority
        expected_hidden = bool(letters) and any(
            sum(char_class(ch) is c for ch in letters) > dev for c in (ScriptClass.LATIN, ScriptClass.OTHER_SCRIPT)
        )
        assert t.hidden == expected_hidden


@settings(max_examples=300)
@given(texts)
def test_round_trip(text):
    text = normalize(text)
    assert detokenize(tokenize(text), text) == text


@pytest.mark.parametrize(
    "word, expected",
    [
        ("गेल", ["गे", "ल"]),
        ("क", ["क"]),
        ("आउ", ["आ", "उ"]),
        ("लइकन", ["ल", "इ", "क", "न"]),
        ("पहुंच", ["प", "हुं", "च"]),
        ("क्षत्रिय", ["क्ष", "त्रि", "य"]),
    ],
)
def test_grapheme_split_examples(word, expected):
    assert grapheme_split(word) == expected
    assert clusters(word) == expected


def test_grapheme_split_empty():
    with pytest.raises(PreconditionError):
        grapheme_split("")


@settings(max_examples=500)
@given(dev_words)
def test_grapheme_split_matches_oracle(word):
    parts = grapheme_split(word)
    assert "".join(parts) == word
    assert parts == clusters(word)


@given(st.text(min_size=1, max_size=20))
def test_grapheme_concatenation(word):
    assert "".join(grapheme_split(word)) == word
