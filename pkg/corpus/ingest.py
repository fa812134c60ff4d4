"""
corpus/ingest.py – Tweet record ingestion, validation and Arabic filtering.

Pipeline:
  1. Stream JSON Lines (canonical) or CSV rows from one or more files
  2. Validate each record: id, created_at, non-blank text
  3. Drop duplicate ids (first occurrence wins, input order preserved)
  4. Keep Arabic tweets: lang == "ar", or, without a lang tag, more than
     half of the letter codepoints in the Arabic blocks

Every dropped record is tallied by reason so that
retained + rejected = ingested holds after each stage.
"""

import csv
import json
import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from types import MappingProxyType

import pandas as pd

from arabic.text import is_arabic_codepoint
from utils.config import ARABIC_LETTER_THRESHOLD
from utils.errors import CorpusError, EmptyCorpusError

logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ("id", "created_at", "text")
FORMATS = ("jsonl", "csv")
_EXTENSIONS = {".jsonl": "jsonl", ".ndjson": "jsonl", ".json": "jsonl", ".csv": "csv"}
_TWITTER_TIME_FORMAT = "%a %b %d %H:%M:%S %z %Y"
_MAX_WARNINGS = 5


@dataclass(frozen=True)
class TweetRecord:
    id: str
    created_at: datetime          # UTC, second precision
    user_id: str
    text: str
    lang: str | None = None


@dataclass(frozen=True)
class Corpus:
    """Immutable, ordered set of retained records plus ingestion bookkeeping."""
    records: tuple[TweetRecord, ...]
    source_path: str
    ingested: int
    rejected: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rejected", MappingProxyType(dict(self.rejected)))

    @property
    def retained(self) -> int:
        return len(self.records)

    @property
    def total_rejected(self) -> int:
        return sum(self.rejected.values())

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[TweetRecord]:
        return iter(self.records)


# ---------------------------------------------------------------------------
# Field parsing
# ---------------------------------------------------------------------------

def parse_timestamp(value) -> datetime:
    """
    Parse an ISO-8601 or classic Twitter timestamp into an aware UTC datetime.

    Naive values are taken as UTC; sub-second precision is dropped.
    Raises ValueError for anything unparseable.
    """
    if value is None or (isinstance(value, str) and not value.strip()):
        raise ValueError("empty timestamp")
    if isinstance(value, str):
        try:
            parsed = datetime.strptime(value.strip(), _TWITTER_TIME_FORMAT)
            return parsed.astimezone(timezone.utc).replace(microsecond=0)
        except ValueError:
            pass
    ts = pd.Timestamp(value)
    if ts is pd.NaT:
        raise ValueError(f"unparseable timestamp {value!r}")
    ts = ts.tz_localize("UTC") if ts.tzinfo is None else ts.tz_convert("UTC")
    return ts.floor("s").to_pydatetime()


def _record_from_mapping(raw: Mapping) -> TweetRecord:
    """Build a TweetRecord or raise ValueError naming the first problem."""
    missing = [name for name in REQUIRED_FIELDS if raw.get(name) in (None, "")]
    if missing:
        raise ValueError(f"missing field(s): {', '.join(missing)}")

    tweet_id = str(raw["id"]).strip()
    if not tweet_id:
        raise ValueError("blank id")
    text = raw["text"]
    if not isinstance(text, str) or not text.strip():
        raise ValueError("blank text")
    lang = str(raw.get("lang") or "").strip().lower() or None
    user_id = raw.get("user_id")
    return TweetRecord(
        id=tweet_id,
        created_at=parse_timestamp(raw["created_at"]),
        user_id="" if user_id is None else str(user_id),
        text=text,
        lang=lang,
    )


# ---------------------------------------------------------------------------
# Readers
# ---------------------------------------------------------------------------

def _iter_jsonl(path: Path) -> Iterator[tuple[int, Mapping | None]]:
    with open(path, "r", encoding="utf-8-sig") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                yield lineno, None
                continue
            yield lineno, obj if isinstance(obj, dict) else None


def _iter_csv(path: Path) -> Iterator[tuple[int, Mapping | None]]:
    with open(path, "r", encoding="utf-8-sig", newline="") as f:
        reader = csv.DictReader(f)
        for row in reader:
            if not any((v or "").strip() for v in row.values() if isinstance(v, str)):
                continue
            yield reader.line_num, row


def infer_format(path: str | Path) -> str:
    fmt = _EXTENSIONS.get(Path(path).suffix.lower())
    if fmt is None:
        raise CorpusError(f"Cannot infer input format from {path}; pass jsonl or csv explicitly.")
    return fmt


def ingest_many(paths: Sequence[str | Path], fmt: str | None = None) -> Corpus:
    """
    Ingest several files into a single corpus, in the order given.

    Parameters
    ----------
    paths : sequence of paths
        Input files; each must exist and be readable.
    fmt : {"jsonl", "csv"}, optional
        Input format; inferred per file from its extension when omitted.

    Returns
    -------
    Corpus
        Retained records in ingestion order, with ``malformed`` and
        ``duplicate`` rejections tallied.

    Raises
    ------
    OSError
        A file cannot be opened.
    EmptyCorpusError
        Not a single valid record was found.
    """
    if fmt is not None and fmt not in FORMATS:
        raise CorpusError(f"Unknown input format {fmt!r}; expected one of {FORMATS}.")

    records: list[TweetRecord] = []
    seen: set[str] = set()
    ingested = malformed = duplicate = 0

    for path in map(Path, paths):
        file_fmt = fmt or infer_format(path)
        rows = _iter_jsonl(path) if file_fmt == "jsonl" else _iter_csv(path)
        logger.info("Reading %s (%s)", path, file_fmt)
        for lineno, raw in rows:
            ingested += 1
            try:
                if raw is None:
                    raise ValueError("not a JSON object")
                record = _record_from_mapping(raw)
            except ValueError as exc:
                malformed += 1
                if malformed <= _MAX_WARNINGS:
                    logger.warning("%s:%d skipped malformed record (%s)", path, lineno, exc)
                continue
            if record.id in seen:
                duplicate += 1
                continue
            seen.add(record.id)
            records.append(record)

    if malformed > _MAX_WARNINGS:
        logger.warning("%d malformed records skipped in total", malformed)

    corpus = Corpus(
        records=tuple(records),
        source_path=";".join(str(p) for p in paths),
        ingested=ingested,
        rejected={"malformed": malformed, "duplicate": duplicate},
    )
    logger.info(
        "Ingested %d records: %d retained, %d malformed, %d duplicate",
        ingested, corpus.retained, malformed, duplicate,
    )
    if not records:
        raise EmptyCorpusError(f"No valid tweet records in {corpus.source_path or 'input'}.")
    return corpus


def ingest(path: str | Path, fmt: str | None = None) -> Corpus:
    """Ingest a single JSONL or CSV file (see ``ingest_many``)."""
    return ingest_many([path], fmt)


# ---------------------------------------------------------------------------
# Language filter
# ---------------------------------------------------------------------------

def arabic_letter_share(text: str) -> float:
    """Share of letter codepoints in *text* that lie in the Arabic blocks."""
    letters = [ch for ch in text if ch.isalpha()]
    if not letters:
        return 0.0
    return sum(1 for ch in letters if is_arabic_codepoint(ch)) / len(letters)


def is_arabic(record: TweetRecord, threshold: float = ARABIC_LETTER_THRESHOLD) -> bool:
    if record.lang is not None:
        return record.lang == "ar"
    return arabic_letter_share(record.text) > threshold


def filter_arabic(corpus: Corpus, threshold: float = ARABIC_LETTER_THRESHOLD) -> Corpus:
    """Keep Arabic records; the rest are tallied under ``non_arabic``."""
    kept = tuple(r for r in corpus.records if is_arabic(r, threshold))
    rejected = dict(corpus.rejected)
    rejected["non_arabic"] = rejected.get("non_arabic", 0) + corpus.retained - len(kept)
    logger.info("Arabic filter kept %d of %d records", len(kept), corpus.retained)
    return Corpus(
        records=kept,
        source_path=corpus.source_path,
        ingested=corpus.ingested,
        rejected=rejected,
    )


def corpus_from_records(records: Iterable[TweetRecord], source_path: str = "<memory>") -> Corpus:
    """Wrap already-validated records (tests, notebooks) with duplicate handling."""
    kept: list[TweetRecord] = []
    seen: set[str] = set()
    total = 0
    for record in records:
        total += 1
        if record.id in seen:
            continue
        seen.add(record.id)
        kept.append(record)
    return Corpus(
        records=tuple(kept),
        source_path=source_path,
        ingested=total,
        rejected={"malformed": 0, "duplicate": total - len(kept)},
    )
