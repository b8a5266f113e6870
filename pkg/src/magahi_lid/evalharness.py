"""Accuracy, confusion matrix and error taxonomy over a labeled test set.

Test-set files are UTF-8 TSV ``<hin|mag|other><TAB><sentence>[<TAB>typo]``.
The five-column machine output of ``identify --format tsv`` is accepted as
well, taking the label and echo columns.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from magahi_lid.classifier import Model, Stage, Verdict, classify_batch, token_suffix_evidence
from magahi_lid.errors import ParseError, PreconditionError
from magahi_lid.lexicon import Language
from magahi_lid.textcore import normalize, tokenize, word_tokens

LABELS = (Language.HINDI, Language.MAGAHI, Language.OTHER)
SHORT_SENTENCE_MAX = 3
TYPO_MARK = "typo"


class ErrorCategory(str, enum.Enum):
    NAMED_ENTITY = "NamedEntity"
    TYPO_SPELLING = "TypoSpelling"
    SHORT_SENTENCE = "ShortSentence"
    BORROWED_LEXICON = "BorrowedLexicon"
    UNCATEGORIZED = "Uncategorized"


@dataclass(frozen=True)
class LabeledExample:
    text: str
    gold: Language
    typo: bool = False

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise PreconditionError("example text must be non-empty")


@dataclass(frozen=True)
class ErrorRecord:
    example: LabeledExample
    verdict: Verdict
    categories: tuple[ErrorCategory, ...] = ()


@dataclass
class EvalReport:
    accuracy: Fraction
    confusion: dict[Language, dict[Language, int]]
    per_stage_counts: dict[Stage, int]
    errors: list[ErrorRecord] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(sum(row.values()) for row in self.confusion.values())

    @property
    def correct(self) -> int:
        return sum(self.confusion[lab][lab] for lab in LABELS)


_STAGE_NAMES = {s.value for s in Stage}


def parse_testset_line(line: str, lineno: int, path: str | None = None) -> LabeledExample:
    fields = line.split("\t")
    if len(fields) >= 5 and fields[1] in _STAGE_NAMES:
        fields = [fields[0], line.split("\t", 4)[4]]
    if len(fields) not in (2, 3):
        raise ParseError(f"expected '<label>\\t<sentence>', got {len(fields)} field(s)", lineno, path)
    try:
        gold = Language.parse(fields[0])
    except ValueError as exc:
        raise ParseError(str(exc), lineno, path) from None
    typo = False
    if len(fields) == 3:
        if fields[2].strip().lower() not in ("", TYPO_MARK):
            raise ParseError(f"unknown annotation {fields[2]!r}", lineno, path)
        typo = fields[2].strip().lower() == TYPO_MARK
    if not fields[1].strip():
        raise ParseError("empty sentence", lineno, path)
    return LabeledExample(fields[1], gold, typo)


def parse_testset(lines: Iterable[str], path: str | None = None) -> list[LabeledExample]:
    out = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        out.append(parse_testset_line(line, lineno, path))
    return out


def load_testset(path: str | Path) -> list[LabeledExample]:
    with open(path, encoding="utf-8") as fh:
        return parse_testset(fh, str(path))


def _categorize_one(record: ErrorRecord, model: Model) -> tuple[ErrorCategory, ...]:
    tokens = tokenize(normalize(record.example.text))
    tags: list[ErrorCategory] = []
    if any(
        t.is_devanagari
        and t.surface not in model.hin_lex
        and t.surface not in model.mag_lex
        and not token_suffix_evidence(tokens, i, model)
        for i, t in enumerate(tokens)
    ):
        tags.append(ErrorCategory.NAMED_ENTITY)
    if record.example.typo:
        tags.append(ErrorCategory.TYPO_SPELLING)
    if len(word_tokens(tokens)) <= SHORT_SENTENCE_MAX:
        tags.append(ErrorCategory.SHORT_SENTENCE)
    if any(t.is_devanagari and t.surface in model.hin_lex and t.surface in model.mag_lex for t in tokens):
        tags.append(ErrorCategory.BORROWED_LEXICON)
    return tuple(tags) or (ErrorCategory.UNCATEGORIZED,)


def categorize_errors(errors: Sequence[ErrorRecord], model: Model) -> list[ErrorRecord]:
    """Tag each error with every heuristic category that applies (order and count preserved)."""
    return [ErrorRecord(r.example, r.verdict, _categorize_one(r, model)) for r in errors]


def evaluate(testset: Sequence[LabeledExample], model: Model, workers: int = 1) -> EvalReport:
    if not testset:
        raise PreconditionError("cannot evaluate on an empty test set")
    verdicts = classify_batch([ex.text for ex in testset], model, workers=workers)
    confusion = {g: {p: 0 for p in LABELS} for g in LABELS}
    stages: Counter[Stage] = Counter()
    errors: list[ErrorRecord] = []
    for ex, verdict in zip(testset, verdicts):
        confusion[ex.gold][verdict.label] += 1
        stages[verdict.stage] += 1
        if verdict.label is not ex.gold:
            errors.append(ErrorRecord(ex, verdict))
    correct = sum(confusion[lab][lab] for lab in LABELS)
    return EvalReport(
        accuracy=Fraction(correct, len(testset)),
        confusion=confusion,
        per_stage_counts={s: stages.get(s, 0) for s in Stage},
        errors=categorize_errors(errors, model),
    )


def _one_line(text: str) -> str:
    return text.replace("\t", " ").replace("\n", " ")


def format_report(report: EvalReport) -> str:
    """Human-readable summary followed by machine-readable TSV sections."""
    out = [
        f"examples: {report.total}",
        f"correct:  {report.correct}",
        f"accuracy: {float(report.accuracy):.2%}",
        "",
        "confusion (rows = gold, columns = predicted):",
        "        " + "".join(f"{p.value:>8}" for p in LABELS),
    ]
    for g in LABELS:
        out.append(f"{g.value:>8}" + "".join(f"{report.confusion[g][p]:>8}" for p in LABELS))
    out.append("")
    out.append("decisions per stage: " + ", ".join(f"{s.value}={n}" for s, n in report.per_stage_counts.items()))
    cat_counts = Counter(c for r in report.errors for c in r.categories)
    if cat_counts:
        out.append("error categories: " + ", ".join(f"{c.value}={n}" for c, n in sorted(cat_counts.items())))
    out.append("")
    out.append("## tsv")
    out.append(f"accuracy\t{report.accuracy.numerator}/{report.accuracy.denominator}\t{float(report.accuracy):.6f}")
    for g in LABELS:
        for p in LABELS:
            out.append(f"confusion\t{g.value}\t{p.value}\t{report.confusion[g][p]}")
    for r in report.errors:
        tags = ",".join(c.value for c in r.categories)
        out.append(f"error\t{r.example.gold.value}\t{r.verdict.label.value}\t{r.verdict.stage.value}\t{tags}\t{_one_line(r.example.text)}")
    return "\n".join(out)
