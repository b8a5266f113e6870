from __future__ import annotations

from pathlib import Path

import pytest

from magahi_lid.classifier import Model, Thresholds, build_model
from magahi_lid.lexicon import Language, NgramDictionary, UnigramLexicon
from magahi_lid.suffixrules import RuleSet, SuffixTable, default_rules

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

# (criterion, description, passed) rows reported at the end of the run
ACCEPTANCE_RESULTS: list[tuple[str, str, bool]] = []


def read_lines(name: str) -> list[str]:
    return (FIXTURES / name).read_text(encoding="utf-8").splitlines()


@pytest.fixture(scope="session")
def hin_corpus() -> list[str]:
    return read_lines("hin_corpus.txt")


@pytest.fixture(scope="session")
def mag_corpus() -> list[str]:
    return read_lines("mag_corpus.txt")


@pytest.fixture(scope="session")
def fixture_model(hin_corpus, mag_corpus) -> Model:
    return build_model(hin_corpus, mag_corpus)


def tiny_model(
    hin_words=(),
    mag_words=(),
    hin_ngrams=(),
    mag_ngrams=(),
    hin_suffixes=(),
    mag_suffixes=(),
    rules: RuleSet | None = None,
    thresholds: Thresholds | None = None,
) -> Model:
    """Hand-built model; every listed entry gets frequency 1 unless given as (key, freq)."""

    def entries(items):
        out = {}
        for item in items:
            key, freq = item if isinstance(item, tuple) and isinstance(item[-1], int) else (item, 1)
            out[key] = freq
        return out

    hl, ml = entries(hin_words), entries(mag_words)
    return Model(
        UnigramLexicon(Language.HINDI, hl, sum(hl.values())),
        UnigramLexicon(Language.MAGAHI, ml, sum(ml.values())),
        NgramDictionary(Language.HINDI, {tuple(k.split()): 1 for k in hin_ngrams}),
        NgramDictionary(Language.MAGAHI, {tuple(k.split()): 1 for k in mag_ngrams}),
        SuffixTable(Language.HINDI, entries(hin_suffixes)),
        SuffixTable(Language.MAGAHI, entries(mag_suffixes)),
        RuleSet() if rules is None else rules,
        thresholds or Thresholds(),
    )


@pytest.fixture
def rules() -> RuleSet:
    return default_rules()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit, desc, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {crit}: {desc}")
