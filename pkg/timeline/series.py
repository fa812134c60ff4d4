"""
timeline/series.py – Weekly label ratio series and long-format plot data.

Weeks are ISO weeks (Monday start, UTC) and contiguous over the corpus
span; a week without tweets carries total 0 and undefined ratios.

First-pass ratios divide by the weekly tweet total (or, with the ``global``
denominator, by the corpus total). Second-pass ratios divide by the tweets
that received a second-pass label that week (or corpus-wide).
"""

import csv
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from datetime import date, datetime, timedelta
from pathlib import Path

import pandas as pd

from classify.classifier import LABELS, SECOND_PASS_LABELS, Label, SecondPassLabel, TweetClassification
from corpus.export import week_start
from utils.config import DENOMINATORS, SERIES_DENOMINATOR

logger = logging.getLogger(__name__)

PLOT_HEADER = ("week_start", "series", "count", "denominator", "ratio")
EVENTS_HEADER = ("name", "date", "label_hint")

SERIES_NAMES: dict[Label | SecondPassLabel, str] = {
    **{label: label.value.lower() for label in LABELS},
    SecondPassLabel.NAMES_VIOLENCE: "names_violence",
    SecondPassLabel.NAMES_THEOLOGICAL: "names_theological",
    SecondPassLabel.NAMES_SECTARIAN: "names_sectarian",
    SecondPassLabel.NAMES_OTHER: "names_other",
}
_BY_SERIES_NAME = {name: key for key, name in SERIES_NAMES.items()}


@dataclass(frozen=True)
class WeeklySeries:
    """Counts and ratios for one week."""
    week_start: date
    total: int
    label_counts: Mapping[Label, int]
    label_ratios: Mapping[Label, float | None]
    label_denominator: int
    second_pass_total: int
    second_pass_counts: Mapping[SecondPassLabel, int]
    second_pass_ratios: Mapping[SecondPassLabel, float | None]
    second_pass_denominator: int

    def ratio(self, key: Label | SecondPassLabel | str) -> float | None:
        key = resolve_series(key)
        if isinstance(key, SecondPassLabel):
            return self.second_pass_ratios[key]
        return self.label_ratios[key]

    def count(self, key: Label | SecondPassLabel | str) -> int:
        key = resolve_series(key)
        if isinstance(key, SecondPassLabel):
            return self.second_pass_counts[key]
        return self.label_counts[key]


def resolve_series(key: Label | SecondPassLabel | str) -> Label | SecondPassLabel:
    """Accept a label enum, its value ("NamesViolence") or its series name ("names_violence")."""
    if isinstance(key, (Label, SecondPassLabel)):
        return key
    if key in _BY_SERIES_NAME:
        return _BY_SERIES_NAME[key]
    for enum in (Label, SecondPassLabel):
        try:
            return enum(key)
        except ValueError:
            continue
    raise KeyError(f"Unknown series {key!r}")


def _ratio(count: int, denominator: int) -> float | None:
    return count / denominator if denominator else None


def _week_table(frame: pd.DataFrame, column: str, values: list[str], weeks: list[date]) -> pd.DataFrame:
    """Week x value count table, zero-filled over every week and value."""
    if frame.empty:
        return pd.DataFrame(0, index=weeks, columns=values)
    return pd.crosstab(frame["week"], frame[column]).reindex(index=weeks, columns=values, fill_value=0)


def aggregate_weekly(
    classifications: Sequence[TweetClassification],
    timestamps: Mapping[str, datetime] | Sequence[datetime] | None = None,
    denominator: str = SERIES_DENOMINATOR,
) -> list[WeeklySeries]:
    """
    Bucket classifications into contiguous ISO weeks.

    Parameters
    ----------
    classifications : sequence of TweetClassification
        Results to aggregate.
    timestamps : mapping id → datetime, or sequence aligned with
        *classifications*, optional
        Overrides ``created_at``; every classification needs a timestamp.
    denominator : {"weekly", "global"}
        Ratio denominator.

    Returns
    -------
    list[WeeklySeries]
        One entry per week from the first to the last populated week.
    """
    if denominator not in DENOMINATORS:
        raise ValueError(f"Unknown denominator {denominator!r}; expected one of {DENOMINATORS}.")
    if not classifications:
        return []

    if timestamps is None:
        stamps = [c.created_at for c in classifications]
    elif isinstance(timestamps, Mapping):
        stamps = [timestamps.get(c.tweet_id) for c in classifications]
    else:
        stamps = list(timestamps)
        if len(stamps) != len(classifications):
            raise ValueError("timestamps must align with classifications")
    missing = [c.tweet_id for c, ts in zip(classifications, stamps) if ts is None]
    if missing:
        raise ValueError(f"{len(missing)} classification(s) without a timestamp, e.g. {missing[0]}")

    frame = pd.DataFrame({
        "week": [week_start(ts) for ts in stamps],
        "label": [c.label.value for c in classifications],
        "second_pass": [c.second_pass.value if c.second_pass else "" for c in classifications],
    })
    first, last = frame["week"].min(), frame["week"].max()
    weeks = [first + timedelta(weeks=i) for i in range((last - first).days // 7 + 1)]

    eligible = frame[frame["second_pass"] != ""]
    label_table = _week_table(frame, "label", [l.value for l in LABELS], weeks)
    second_table = _week_table(eligible, "second_pass", [s.value for s in SECOND_PASS_LABELS], weeks)

    grand_total = len(frame)
    grand_eligible = len(eligible)
    series = []
    for week in weeks:
        label_counts = {l: int(label_table.at[week, l.value]) for l in LABELS}
        second_counts = {s: int(second_table.at[week, s.value]) for s in SECOND_PASS_LABELS}
        total = sum(label_counts.values())
        eligible_total = sum(second_counts.values())
        label_den = total if denominator == "weekly" else grand_total
        second_den = eligible_total if denominator == "weekly" else grand_eligible
        series.append(WeeklySeries(
            week_start=week,
            total=total,
            label_counts=label_counts,
            label_ratios={l: _ratio(n, label_den) for l, n in label_counts.items()},
            label_denominator=label_den,
            second_pass_total=eligible_total,
            second_pass_counts=second_counts,
            second_pass_ratios={s: _ratio(n, second_den) for s, n in second_counts.items()},
            second_pass_denominator=second_den,
        ))

    logger.info("Aggregated %d tweets into %d weeks (%s denominator)", grand_total, len(series), denominator)
    return series


# ---------------------------------------------------------------------------
# Plot data
# ---------------------------------------------------------------------------

def _format_ratio(value: float | None) -> str:
    return "" if value is None else repr(value)


def events_sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}_events{path.suffix or '.csv'}")


def emit_plot_data(series: Sequence[WeeklySeries], events: Sequence, path: str | Path) -> Path:
    """
    Write the long-format plot CSV and its events sidecar.

    One row per (week, series); second-pass rows appear when any week has a
    second-pass tweet. Returns the sidecar path.
    """
    if not series:
        raise ValueError("No weekly series to write.")

    path = Path(path)
    with_second_pass = any(w.second_pass_total for w in series)
    rows = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(PLOT_HEADER)
        for week in series:
            day = week.week_start.isoformat()
            for label in LABELS:
                writer.writerow([day, SERIES_NAMES[label], week.label_counts[label],
                                 week.label_denominator, _format_ratio(week.label_ratios[label])])
                rows += 1
            if with_second_pass:
                for label in SECOND_PASS_LABELS:
                    writer.writerow([day, SERIES_NAMES[label], week.second_pass_counts[label],
                                     week.second_pass_denominator,
                                     _format_ratio(week.second_pass_ratios[label])])
                    rows += 1

    sidecar = events_sidecar_path(path)
    with open(sidecar, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(EVENTS_HEADER)
        for event in events:
            writer.writerow([event.name, event.date.isoformat(), ";".join(event.related_categories)])

    logger.info("Wrote %d plot rows to %s and %d events to %s", rows, path, len(events), sidecar)
    return sidecar


def read_plot_data(path: str | Path) -> list[WeeklySeries]:
    """Rebuild the weekly series from a CSV written by ``emit_plot_data``."""
    frame = pd.read_csv(
        path,
        dtype={"week_start": str, "series": str, "count": "int64", "denominator": "int64", "ratio": str},
        keep_default_na=False,
    )
    if tuple(frame.columns) != PLOT_HEADER:
        raise ValueError(f"{path}: unexpected header {list(frame.columns)}")

    series = []
    for day, group in frame.groupby("week_start", sort=True):
        counts: dict = {}
        ratios: dict = {}
        label_den = second_den = 0
        for _, name, count, denominator, ratio in group.itertuples(index=False, name=None):
            key = resolve_series(name)
            counts[key] = int(count)
            ratios[key] = float(ratio) if ratio else None
            if isinstance(key, SecondPassLabel):
                second_den = int(denominator)
            else:
                label_den = int(denominator)

        label_counts = {l: counts.get(l, 0) for l in LABELS}
        second_counts = {s: counts.get(s, 0) for s in SECOND_PASS_LABELS}
        series.append(WeeklySeries(
            week_start=date.fromisoformat(day),
            total=sum(label_counts.values()),
            label_counts=label_counts,
            label_ratios={l: ratios.get(l) for l in LABELS},
            label_denominator=label_den,
            second_pass_total=sum(second_counts.values()),
            second_pass_counts=second_counts,
            second_pass_ratios={s: ratios.get(s) for s in SECOND_PASS_LABELS},
            second_pass_denominator=second_den,
        ))
    return series
