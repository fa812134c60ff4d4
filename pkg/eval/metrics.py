"""
eval/metrics.py – Category distribution reports.

``category_summary`` gives each first-pass label's count with its share of
all tweets and of the categorized tweets (everything but None).
``second_pass_summary`` gives each second-pass label's share of the
second-pass tweets, plus two coverage ratios over the Other tweets: every
second-pass tweet, and only the three named subcategories.

Both accept classification results or pre-counted tallies.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from classify.classifier import (
    LABELS,
    SECOND_PASS_LABELS,
    Label,
    SecondPassLabel,
    TweetClassification,
    label_counts,
    second_pass_counts,
)

CATEGORY_SUMMARY_FIELDS = ("category", "count", "pct_total", "pct_categorized")
SECOND_PASS_SUMMARY_FIELDS = ("category", "count", "pct_second_pass")


def _pct(part: int, whole: int) -> float | None:
    return 100.0 * part / whole if whole else None


@dataclass(frozen=True)
class CategoryRow:
    label: Label
    count: int
    pct_total: float | None
    pct_categorized: float | None      # None for the None label


@dataclass(frozen=True)
class CategorySummary:
    rows: tuple[CategoryRow, ...]
    total: int
    categorized: int

    def row(self, label: Label | str) -> CategoryRow:
        label = Label(label)
        return next(r for r in self.rows if r.label is label)

    def as_rows(self) -> list[dict]:
        out = [
            {"category": r.label.value, "count": r.count,
             "pct_total": r.pct_total, "pct_categorized": r.pct_categorized}
            for r in self.rows
        ]
        out.append({"category": "Total", "count": self.total,
                    "pct_total": _pct(self.total, self.total), "pct_categorized": None})
        out.append({"category": "Categorized", "count": self.categorized,
                    "pct_total": _pct(self.categorized, self.total),
                    "pct_categorized": _pct(self.categorized, self.categorized)})
        return out


@dataclass(frozen=True)
class SecondPassRow:
    label: SecondPassLabel
    count: int
    pct_second_pass: float | None


@dataclass(frozen=True)
class SecondPassSummary:
    rows: tuple[SecondPassRow, ...]
    total: int
    other_count: int
    named_total: int
    other_coverage: float | None       # all second-pass tweets / Other
    named_coverage: float | None       # NamesViolence+Theological+Sectarian / Other

    def row(self, label: SecondPassLabel | str) -> SecondPassRow:
        label = SecondPassLabel(label)
        return next(r for r in self.rows if r.label is label)

    def as_rows(self) -> list[dict]:
        out = [
            {"category": r.label.value, "count": r.count, "pct_second_pass": r.pct_second_pass}
            for r in self.rows
        ]
        out.append({"category": "Total", "count": self.total,
                    "pct_second_pass": _pct(self.total, self.total)})
        out.append({"category": "Other (first pass)", "count": self.other_count, "pct_second_pass": None})
        out.append({"category": "Coverage of Other, all second-pass", "count": self.total,
                    "pct_second_pass": _pct(self.total, self.other_count)})
        out.append({"category": "Coverage of Other, named subcategories", "count": self.named_total,
                    "pct_second_pass": _pct(self.named_total, self.other_count)})
        return out


def _label_tally(data: Sequence[TweetClassification] | Mapping) -> dict[Label, int]:
    if isinstance(data, Mapping):
        tally = dict.fromkeys(LABELS, 0)
        for key, value in data.items():
            tally[Label(key)] = int(value)
        return tally
    return label_counts(data)


def category_summary(data: Sequence[TweetClassification] | Mapping[Label | str, int]) -> CategorySummary:
    """
    First-pass distribution report.

    >>> s = category_summary({"Violence": 1, "None": 3})
    >>> s.row("Violence").pct_total, s.row("Violence").pct_categorized
    (25.0, 100.0)
    """
    tally = _label_tally(data)
    total = sum(tally.values())
    categorized = total - tally[Label.NONE]
    rows = tuple(
        CategoryRow(
            label=label,
            count=tally[label],
            pct_total=_pct(tally[label], total),
            pct_categorized=None if label is Label.NONE else _pct(tally[label], categorized),
        )
        for label in LABELS
    )
    return CategorySummary(rows=rows, total=total, categorized=categorized)


def second_pass_summary(
    data: Sequence[TweetClassification] | Mapping[SecondPassLabel | str, int],
    other_count: int | None = None,
) -> SecondPassSummary:
    """
    Second-pass distribution report.

    Parameters
    ----------
    data : classification results or a second-pass tally
    other_count : int, optional
        Number of first-pass Other tweets. Required with a tally; counted
        from the results otherwise.
    """
    if isinstance(data, Mapping):
        if other_count is None:
            raise ValueError("other_count is required with a pre-counted tally")
        tally = dict.fromkeys(SECOND_PASS_LABELS, 0)
        for key, value in data.items():
            tally[SecondPassLabel(key)] = int(value)
    else:
        tally = second_pass_counts(data)
        if other_count is None:
            other_count = label_counts(data)[Label.OTHER]

    total = sum(tally.values())
    named = total - tally[SecondPassLabel.NAMES_OTHER]
    rows = tuple(SecondPassRow(s, tally[s], _pct(tally[s], total)) for s in SECOND_PASS_LABELS)
    return SecondPassSummary(
        rows=rows,
        total=total,
        other_count=other_count,
        named_total=named,
        other_coverage=total / other_count if other_count else None,
        named_coverage=named / other_count if other_count else None,
    )
