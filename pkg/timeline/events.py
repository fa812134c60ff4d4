"""
timeline/events.py – Offline event list and event-window summaries.

Events CSV columns: name, date (ISO), description, categories
(';'-separated first- or second-pass labels the event is expected to move).
"""

import csv
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from datetime import date
from pathlib import Path

import pandas as pd

from classify.classifier import Label, SecondPassLabel
from corpus.export import week_start
from timeline.series import SERIES_NAMES, WeeklySeries, resolve_series
from utils.config import BUILTIN_EVENTS_PATH
from utils.errors import EventFileError, WindowRangeError

logger = logging.getLogger(__name__)

EVENTS_FILE_HEADER = ("name", "date", "description", "categories")
_KNOWN_TAGS = {l.value for l in Label} | {s.value for s in SecondPassLabel}
# float noise floor for flat series
_NEGLIGIBLE = 1e-12


@dataclass(frozen=True)
class EventRecord:
    name: str
    date: date
    description: str = ""
    related_categories: tuple[str, ...] = ()


@dataclass(frozen=True)
class EventWindowSummary:
    event: str
    date: date
    series: str
    event_week: date
    pre_weeks: int
    post_weeks: int
    baseline_mean: float
    window_mean: float
    delta: float
    delta_sd: float

    def as_row(self) -> dict:
        return {
            "event": self.event,
            "date": self.date.isoformat(),
            "series": self.series,
            "event_week": self.event_week.isoformat(),
            "pre_weeks": self.pre_weeks,
            "post_weeks": self.post_weeks,
            "baseline_mean": repr(self.baseline_mean),
            "window_mean": repr(self.window_mean),
            "delta": repr(self.delta),
            "delta_sd": repr(self.delta_sd),
        }


def _parse_row(row: dict, line: int) -> EventRecord:
    name = (row.get("name") or "").strip()
    if not name:
        raise EventFileError("event without a name", line)
    try:
        day = date.fromisoformat((row.get("date") or "").strip())
    except ValueError:
        raise EventFileError(f"unparseable date {row.get('date')!r} for {name!r}", line)
    tags = tuple(t.strip() for t in (row.get("categories") or "").split(";") if t.strip())
    unknown = [t for t in tags if t not in _KNOWN_TAGS]
    if unknown:
        raise EventFileError(f"unknown categories {unknown} for {name!r}", line)
    return EventRecord(name=name, date=day, description=(row.get("description") or "").strip(),
                       related_categories=tags)


def load_events(path: str | Path | None = None) -> list[EventRecord]:
    """
    Read an events CSV; the bundled event list when *path* is None.

    Raises
    ------
    EventFileError
        Bad header, missing name, unparseable date, unknown category tag or
        duplicate name, with the offending line number.
    """
    path = Path(BUILTIN_EVENTS_PATH if path is None else path)
    events: list[EventRecord] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None:
            return events
        if tuple(h.strip() for h in reader.fieldnames) != EVENTS_FILE_HEADER:
            raise EventFileError(f"expected header {','.join(EVENTS_FILE_HEADER)}", 1)
        for row in reader:
            if not any((v or "").strip() for v in row.values() if isinstance(v, str)):
                continue
            event = _parse_row(row, reader.line_num)
            if event.name in seen:
                raise EventFileError(f"duplicate event name {event.name!r}", reader.line_num)
            seen.add(event.name)
            events.append(event)
    logger.info("Loaded %d events from %s", len(events), path)
    return events


def event_window_summary(
    series: Sequence[WeeklySeries],
    event: EventRecord,
    pre_weeks: int,
    post_weeks: int,
    label: Label | SecondPassLabel | str,
) -> EventWindowSummary:
    """
    Compare a label's mean ratio around an event with the rest of the series.

    The window covers ``pre_weeks`` weeks before the event week through
    ``post_weeks`` weeks after it; every other week is baseline. Weeks with an
    undefined ratio are left out of both means. ``delta_sd`` is the delta in
    baseline (population) standard deviations.

    Raises
    ------
    ValueError
        ``pre_weeks`` or ``post_weeks`` below 1.
    WindowRangeError
        The window does not fit inside the series, or the window or the
        baseline has no defined ratio.
    """
    if pre_weeks < 1 or post_weeks < 1:
        raise ValueError("pre_weeks and post_weeks must be at least 1")
    key = resolve_series(label)
    if not series:
        raise WindowRangeError("empty series")

    ratios = pd.Series(
        [w.ratio(key) for w in series],
        index=[w.week_start for w in series],
        dtype="float64",
    )
    event_week = week_start(event.date)
    first, last = series[0].week_start, series[-1].week_start
    if event_week not in ratios.index:
        raise WindowRangeError(f"{event.name} ({event.date}) lies outside {first}..{last}")
    pos = ratios.index.get_loc(event_week)
    if pos - pre_weeks < 0 or pos + post_weeks >= len(ratios):
        raise WindowRangeError(
            f"{event.name}: window -{pre_weeks}/+{post_weeks} weeks does not fit inside {first}..{last}"
        )

    in_window = [pos - pre_weeks <= i <= pos + post_weeks for i in range(len(ratios))]
    window = ratios[in_window].dropna()
    baseline = ratios[[not w for w in in_window]].dropna()
    if window.empty or baseline.empty:
        raise WindowRangeError(f"{event.name}: no tweets in the window or in the baseline")

    baseline_mean = float(baseline.mean())
    window_mean = float(window.mean())
    delta = window_mean - baseline_mean
    sd = float(baseline.std(ddof=0))
    if sd > _NEGLIGIBLE:
        delta_sd = delta / sd
    elif abs(delta) <= _NEGLIGIBLE:
        delta_sd = 0.0
    else:
        delta_sd = math.copysign(math.inf, delta)

    return EventWindowSummary(
        event=event.name,
        date=event.date,
        series=SERIES_NAMES[key],
        event_week=event_week,
        pre_weeks=pre_weeks,
        post_weeks=post_weeks,
        baseline_mean=baseline_mean,
        window_mean=window_mean,
        delta=delta,
        delta_sd=delta_sd,
    )
