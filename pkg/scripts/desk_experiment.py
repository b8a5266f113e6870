"""Build a model from the fixture corpora, evaluate it on the held-out set and print the report.

    python scripts/desk_experiment.py [--out DIR] [--exclusive-lexicon]
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from magahi_lid.classifier import build_model, save_model
from magahi_lid.evalharness import evaluate, format_report, load_testset
from magahi_lid.suffixrules import shared_suffix_fraction

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None, help="also write the model directory here")
    ap.add_argument("--exclusive-lexicon", action="store_true")
    args = ap.parse_args()

    hin = (FIXTURES / "hin_corpus.txt").read_text(encoding="utf-8").splitlines()
    mag = (FIXTURES / "mag_corpus.txt").read_text(encoding="utf-8").splitlines()
    start = time.perf_counter()
    model = build_model(hin, mag, exclusive=args.exclusive_lexicon)
    report = evaluate(load_testset(FIXTURES / "testset.tsv"), model)
    elapsed = time.perf_counter() - start

    if args.out:
        save_model(model, args.out)
    overlap = shared_suffix_fraction(model.mag_suffixes, model.hin_suffixes)
    print(f"corpora: hin={len(hin)} mag={len(mag)} lines")
    print(f"shared suffixes: {overlap.shared}/{overlap.union} = {float(overlap):.2%}")
    print(f"build + evaluate: {elapsed:.2f} s")
    print()
    print(format_report(report))


if __name__ == "__main__":
    main()
