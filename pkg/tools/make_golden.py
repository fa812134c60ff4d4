#!/usr/bin/env python3
"""
tools/make_golden.py – Generate a pinned ISRI golden file from NLTK.

Run with:  python -m tools.make_golden [--out tests/data/isri_golden_nltk.csv]

The vocabulary is built deterministically from a fixed list of roots and
affix/pattern templates, so the same words are checked live in the test
suite and pinned here.
"""

import argparse
import csv
from pathlib import Path

ROOTS = (
    "قتل", "كتب", "شهد", "عرك", "حرب", "قصف", "فجر", "فتح", "خلف", "حسب",
    "حمد", "دين", "كبر", "رحم", "رسل", "شرع", "سلم", "جند", "خبر", "رفض",
    "كفر", "غرب", "عرب", "علم", "عمل", "نصر", "حكم", "ظلم", "ذكر", "درس",
    "سجد", "صبر", "طلب", "قدر", "لعب", "نزل", "هجر", "وعد", "جمع", "صفي",
)

# {a}{b}{c} are the root letters
TEMPLATES = (
    "{a}{b}{c}",
    "ال{a}{b}{c}",
    "و{a}{b}{c}",
    "{a}{b}{c}ون",
    "ي{a}{b}{c}ون",
    "م{a}{b}{c}",
    "{a}ا{b}{c}",
    "م{a}{b}و{c}",
    "{a}{b}ا{c}",
    "ال{a}{b}ا{c}ة",
    "است{a}{b}ا{c}",
    "{a}{b}{c}ات",
    "و{a}{b}{c}هم",
    "ت{a}{b}ي{c}",
    "م{a}{b}{c}ين",
    "سي{a}{b}{c}ون",
    "بال{a}{b}{c}",
    "{a}ا{b}{c}ة",
    "أ{a}{b}{c}",
    "ال{a}{b}ي{c}",
    "م{a}ا{b}{c}",
    "ت{a}{b}{c}ون",
)

DEFAULT_OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "isri_golden_nltk.csv"


def golden_vocabulary() -> list[str]:
    """Every root × template word, deduplicated and sorted."""
    words = {t.format(a=r[0], b=r[1], c=r[2]) for r in ROOTS for t in TEMPLATES}
    return sorted(words)


def main():
    from nltk.stem.isri import ISRIStemmer

    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args()

    stemmer = ISRIStemmer()
    words = golden_vocabulary()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["word", "expected_stem"])
        for word in words:
            writer.writerow([word, stemmer.stem(word)])

    print(f"Generated {len(words)} golden pairs in {args.out}")


if __name__ == "__main__":
    main()
