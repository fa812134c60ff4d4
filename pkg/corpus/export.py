"""
corpus/export.py – Persist classification results and read them back.

Classification CSV columns:
  id, week, violence, theological, sectarian, names, label, second_pass_label

``week`` is the Monday (UTC) of the tweet's ISO week; ``second_pass_label``
is empty for tweets without a second-pass label.
"""

import csv
import logging
from collections.abc import Sequence
from datetime import date, datetime, time, timedelta, timezone
from pathlib import Path

from classify.classifier import Label, SecondPassLabel, TweetClassification
from lexicon.dictionary import CATEGORIES
from utils.errors import CorpusError

logger = logging.getLogger(__name__)

CLASSIFICATION_HEADER = (
    "id", "week", "violence", "theological", "sectarian", "names", "label", "second_pass_label",
)
_COUNT_COLUMNS = {c: c.value.lower() for c in CATEGORIES}


def week_start(ts: datetime | date) -> date:
    """Monday of the ISO week containing *ts* (UTC for datetimes)."""
    if isinstance(ts, datetime):
        if ts.tzinfo is not None:
            ts = ts.astimezone(timezone.utc)
        ts = ts.date()
    return ts - timedelta(days=ts.weekday())


def write_classifications(results: Sequence[TweetClassification], path: str | Path) -> int:
    """
    Write one CSV row per classification; returns the row count.

    Raises
    ------
    ValueError
        *results* is empty, or a result has no timestamp.
    OSError
        *path* cannot be written.
    """
    if not results:
        raise ValueError("No classifications to write.")

    undated = next((r.tweet_id for r in results if r.created_at is None), None)
    if undated is not None:
        raise ValueError(f"Classification {undated} has no timestamp.")

    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CLASSIFICATION_HEADER)
        for r in results:
            writer.writerow([
                r.tweet_id,
                week_start(r.created_at).isoformat(),
                *(r.count(c) for c in CATEGORIES),
                r.label.value,
                r.second_pass.value if r.second_pass else "",
            ])
    logger.info("Wrote %d classifications to %s", len(results), path)
    return len(results)


def read_classifications(path: str | Path) -> list[TweetClassification]:
    """
    Parse a classification CSV written by ``write_classifications``.

    Timestamps are restored as the week start (00:00 UTC), which is all the
    weekly aggregation needs.
    """
    path = Path(path)
    results = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != CLASSIFICATION_HEADER:
            raise CorpusError(f"{path}: unexpected header {reader.fieldnames}")
        for row in reader:
            try:
                week = date.fromisoformat(row["week"])
                counts = {c: int(row[col]) for c, col in _COUNT_COLUMNS.items()}
                second = row["second_pass_label"]
                results.append(TweetClassification(
                    tweet_id=row["id"],
                    counts=counts,
                    label=Label(row["label"]),
                    second_pass=SecondPassLabel(second) if second else None,
                    created_at=datetime.combine(week, time(), tzinfo=timezone.utc),
                ))
            except (KeyError, TypeError, ValueError) as exc:
                raise CorpusError(f"{path}:{reader.line_num}: bad classification row ({exc})") from exc
    return results
