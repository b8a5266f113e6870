"""Command-line entry point: ``build``, ``identify``, ``evaluate``, ``inspect``.

Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 I/O error.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import BinaryIO, Sequence

from magahi_lid.classifier import (
    Thresholds,
    Verdict,
    build_model,
    classify_batch,
    load_model,
    save_model,
    token_suffix_evidence,
)
from magahi_lid.errors import ConfigError, LidError, ParseError, UndefinedRatioError
from magahi_lid.evalharness import evaluate, format_report, load_testset
from magahi_lid.lexicon import Language, import_wordlist, lookup_unigram, merge_lexicons
from magahi_lid.suffixrules import RuleKind, load_rules, match_suffix, rule_evidence, shared_suffix_fraction
from magahi_lid.textcore import ScriptClass, char_class, normalize, tokenize

log = logging.getLogger("magahi_lid")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3
MODEL_ENV = "LID_MODEL_DIR"

HUMAN_PHRASES = {
    Language.MAGAHI: "The text is Magahi",
    Language.HINDI: "The text is Hindi",
    Language.OTHER: "Text is of other language",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ratio(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None


def make_parser() -> argparse.ArgumentParser:
    model_opts = _Parser(add_help=False)
    model_opts.add_argument("--model", type=Path, default=None, help=f"model directory (default: ${MODEL_ENV})")
    model_opts.add_argument("--min-devanagari", type=_ratio, default=None, help="script gate threshold in (0, 1]")
    model_opts.add_argument("--margin", type=_ratio, default=None, help="score difference needed to decide")

    parser = _Parser(prog="magahi-lid", description="Hindi / Magahi / other language identification")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", parents=[model_opts], help="build a model directory from raw corpora")
    p.add_argument("hin_corpus", type=Path)
    p.add_argument("mag_corpus", type=Path)
    p.add_argument("--out", type=Path, default=None, help="output model directory (default: --model)")
    p.add_argument("--max-ngram", type=int, choices=(2, 3), default=3)
    p.add_argument("--exclusive-lexicon", action="store_true", help="drop words found in both lexicons")
    p.add_argument("--rules", type=Path, default=None, help="rule file to ship instead of the default")
    p.add_argument("--mag-extra", type=Path, action="append", default=[], help="extra Magahi word list to merge")
    p.add_argument("--hin-extra", type=Path, action="append", default=[], help="extra Hindi word list to merge")

    p = sub.add_parser("identify", parents=[model_opts], help="classify one sentence per input line")
    p.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
    p.add_argument("--format", choices=("human", "tsv", "jsonl"), default="human")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("evaluate", parents=[model_opts], help="score a model on a labeled test set")
    p.add_argument("testset", type=Path)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("inspect", parents=[model_opts], help="show every piece of evidence for one word")
    p.add_argument("word")
    return parser


def _model_dir(args) -> Path:
    model_dir = args.model or os.environ.get(MODEL_ENV)
    if not model_dir:
        raise UsageError(f"no model directory: pass --model or set {MODEL_ENV}")
    return Path(model_dir)


def _thresholds(args, base: Thresholds | None = None) -> Thresholds:
    base = base or Thresholds()
    return Thresholds(
        base.min_devanagari_fraction if args.min_devanagari is None else args.min_devanagari,
        base.decision_margin if args.margin is None else args.margin,
    )


def _load(args):
    model = load_model(_model_dir(args))
    return model.with_thresholds(_thresholds(args, model.thresholds))


def _read_lines(path: Path) -> list[bytes]:
    with open(path, "rb") as fh:
        return _split_lines(fh)


def _split_lines(fh: BinaryIO) -> list[bytes]:
    return [line.rstrip(b"\r\n") for line in fh]


def cmd_build(args, out) -> int:
    out_dir = args.out or _model_dir(args)
    hin, mag = _read_lines(args.hin_corpus), _read_lines(args.mag_corpus)
    for name, lines in (("Hindi", hin), ("Magahi", mag)):
        if not any(line.strip() for line in lines):
            log.warning("%s corpus is empty; its resources will be empty", name)
    rules = load_rules(args.rules) if args.rules else None
    model = build_model(
        hin, mag, max_n=args.max_ngram, exclusive=args.exclusive_lexicon, rules=rules, thresholds=_thresholds(args)
    )
    extras = {Language.HINDI: args.hin_extra, Language.MAGAHI: args.mag_extra}
    for lang, paths in extras.items():
        for path in paths:
            extra = import_wordlist(path, lang)
            attr = f"{lang.value}_lex"
            model = dataclasses.replace(model, **{attr: merge_lexicons(getattr(model, attr), extra)})
    save_model(model, out_dir)

    print(f"model written to {out_dir}", file=out)
    for lang in (Language.MAGAHI, Language.HINDI):
        lex, ng, sfx = model.lexicon(lang), model.ngrams(lang), model.suffixes(lang)
        n_bi = sum(1 for k in ng.entries if len(k) == 2)
        print(
            f"{lang.display:<7} tokens={lex.total_tokens} unique_words={len(lex)} "
            f"bigrams={n_bi} trigrams={len(ng) - n_bi} unique_suffixes={len(sfx)}",
            file=out,
        )
    try:
        overlap = shared_suffix_fraction(model.mag_suffixes, model.hin_suffixes)
        print(
            f"shared suffixes: {overlap.shared}/{overlap.union} = {float(overlap.ratio):.2%} "
            f"(magahi-only={overlap.only_a}, hindi-only={overlap.only_b})",
            file=out,
        )
    except UndefinedRatioError:
        print("shared suffixes: n/a (empty suffix table)", file=out)
    print(f"rules: {len(model.rules)}", file=out)
    return EXIT_OK


def format_verdict(verdict: Verdict, fmt: str) -> str:
    if fmt == "human":
        return HUMAN_PHRASES[verdict.label]
    echo = verdict.echo.replace("\t", " ")
    if fmt == "tsv":
        return f"{verdict.label.value}\t{verdict.stage.value}\t{verdict.score_hin}\t{verdict.score_mag}\t{echo}"
    record = {
        "label": verdict.label.value,
        "stage": verdict.stage.value,
        "score_hin": verdict.score_hin,
        "score_mag": verdict.score_mag,
        "echo": verdict.echo,
        "evidence": [
            {"lang": e.language.value, "source": e.source.value, "weight": e.weight, "detail": e.detail, "position": e.position}
            for e in verdict.evidence
        ],
    }
    if verdict.error:
        record["error"] = verdict.error
    return json.dumps(record, ensure_ascii=False)


def cmd_identify(args, out) -> int:
    model = _load(args)
    if args.input == "-":
        lines = _split_lines(sys.stdin.buffer)
    else:
        lines = _read_lines(Path(args.input))
    status = EXIT_OK
    for lineno, verdict in enumerate(classify_batch(lines, model, workers=args.workers), start=1):
        if verdict.error:
            log.error("line %d: %s", lineno, verdict.error)
            status = EXIT_DATA
        print(format_verdict(verdict, args.format), file=out)
    return status


def cmd_evaluate(args, out) -> int:
    model = _load(args)
    report = evaluate(load_testset(args.testset), model, workers=args.workers)
    print(format_report(report), file=out)
    return EXIT_OK


def cmd_inspect(args, out) -> int:
    model = _load(args)
    word = normalize(args.word).strip()
    if not word or any(char_class(ch) is not ScriptClass.DEVANAGARI for ch in word):
        log.error("query %r is not a single Devanagari word", args.word)
        return EXIT_DATA
    tokens = tokenize(word)
    print(f"word: {word}", file=out)
    for lang in (Language.HINDI, Language.MAGAHI):
        m = lookup_unigram(model.lexicon(lang), word)
        print(f"{lang.value} unigram: {m.frequency if m else 'absent'}", file=out)
    for lang, other in ((Language.HINDI, Language.MAGAHI), (Language.MAGAHI, Language.HINDI)):
        hit = match_suffix(word, model.suffixes(lang))
        if hit is None:
            print(f"{lang.value} suffix: none", file=out)
        else:
            shared = " (shared, no evidence)" if hit.suffix in model.suffixes(other) else ""
            print(f"{lang.value} suffix: {hit.suffix} freq={hit.frequency}{shared}", file=out)
    fired = rule_evidence(tokens, 0, model.rules)
    for ev in fired:
        print(f"rule: {ev.detail} -> {ev.language.value} weight={ev.weight}", file=out)
    for rule in model.rules:
        if rule.kind is RuleKind.FOLLOWS and rule.pattern[1] == word:
            print(f"rule: {rule.describe()} -> {rule.language.value} weight={rule.weight} (when preceded by {rule.pattern[0]})", file=out)
    if not fired:
        print("rule: none", file=out)
    stage = token_suffix_evidence(tokens, 0, model)
    summary = ", ".join(f"{e.language.value}:{e.source.value}:{e.detail}" for e in stage) or "none"
    print(f"suffix-stage evidence: {summary}", file=out)
    return EXIT_OK


COMMANDS = {"build": cmd_build, "identify": cmd_identify, "evaluate": cmd_evaluate, "inspect": cmd_inspect}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ConfigError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (LidError, ParseError) as exc:
        log.error("%s", exc)
        return EXIT_DATA
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
