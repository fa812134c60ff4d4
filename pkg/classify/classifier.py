"""
classify/classifier.py – Dictionary majority-rule tweet classifier.

Per tweet:
  tokenize → normalize → drop stop words → stem → count category matches
  → majority rule (unique maximum wins, shared maximum is Other, no match
  is None) → for Other tweets with a Names match, a second majority vote
  over the three remaining categories.

Classification is pure per tweet, so a corpus can be sharded over worker
processes and the results concatenated in input order.
"""

import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from functools import partial

from arabic.isri import stem
from arabic.text import Token, normalize, tokenize
from corpus.ingest import Corpus, TweetRecord
from lexicon.dictionary import CATEGORIES, Category, StemLexicon, fold, match_categories
from utils.config import CLASSIFY_WORKERS, COUNTING_POLICY, SHARD_SIZE

logger = logging.getLogger(__name__)


class Label(str, Enum):
    VIOLENCE = "Violence"
    THEOLOGICAL = "Theological"
    SECTARIAN = "Sectarian"
    NAMES = "Names"
    OTHER = "Other"
    NONE = "None"


class SecondPassLabel(str, Enum):
    NAMES_VIOLENCE = "NamesViolence"
    NAMES_THEOLOGICAL = "NamesTheological"
    NAMES_SECTARIAN = "NamesSectarian"
    NAMES_OTHER = "NamesOther"


LABELS: tuple[Label, ...] = tuple(Label)
SECOND_PASS_LABELS: tuple[SecondPassLabel, ...] = tuple(SecondPassLabel)
_SECOND_PASS_OF = {
    Category.VIOLENCE: SecondPassLabel.NAMES_VIOLENCE,
    Category.THEOLOGICAL: SecondPassLabel.NAMES_THEOLOGICAL,
    Category.SECTARIAN: SecondPassLabel.NAMES_SECTARIAN,
}


@dataclass(frozen=True)
class TextAnalysis:
    """Every intermediate stage of the per-tweet pipeline."""
    raw_tokens: tuple[Token, ...]
    tokens: tuple[Token, ...]            # normalized, before stop-word removal
    content: tuple[Token, ...]           # stop words removed
    stems: tuple[str, ...]
    normalized_text: str                 # searched for compound entries


@dataclass(frozen=True)
class TweetClassification:
    tweet_id: str
    counts: Mapping[Category, int]
    label: Label
    second_pass: SecondPassLabel | None = None
    created_at: datetime | None = None

    def count(self, category: Category) -> int:
        return self.counts.get(Category(category), 0)


def analyze_text(text: str, lex: StemLexicon) -> TextAnalysis:
    raw_tokens = tuple(tokenize(text))
    tokens = tuple(t for t in map(normalize, raw_tokens) if t is not None)
    content = tuple(t for t in tokens if not lex.is_stop(t.surface))
    return TextAnalysis(
        raw_tokens=raw_tokens,
        tokens=tokens,
        content=content,
        stems=tuple(stem(t.surface) for t in content),
        normalized_text=fold(" ".join(t.surface for t in tokens)),
    )


def _majority(counts: Mapping[Category, int], categories: Sequence[Category]) -> Category | None | str:
    """Unique argmax, ``"tie"`` for a shared maximum, None when all are zero."""
    best = max(counts.get(c, 0) for c in categories)
    if best < 1:
        return None
    leaders = [c for c in categories if counts.get(c, 0) == best]
    return leaders[0] if len(leaders) == 1 else "tie"


def classify_tweet(counts: Mapping[Category, int]) -> Label:
    """
    First-pass majority rule.

    >>> classify_tweet({Category.VIOLENCE: 2, Category.THEOLOGICAL: 1,
    ...                 Category.SECTARIAN: 0, Category.NAMES: 0})
    <Label.VIOLENCE: 'Violence'>
    """
    if set(counts) != set(CATEGORIES) or any(v < 0 for v in counts.values()):
        raise ValueError("counts must map all four categories to non-negative integers")
    winner = _majority(counts, CATEGORIES)
    if winner is None:
        return Label.NONE
    if winner == "tie":
        return Label.OTHER
    return Label(winner.value)


def second_pass(counts: Mapping[Category, int], label: Label) -> SecondPassLabel | None:
    """
    Re-vote an Other tweet over Violence/Theological/Sectarian once its Names
    matches are set aside. Tweets without a Names match get no second label.
    """
    if label is not Label.OTHER:
        raise ValueError(f"second pass only applies to Other tweets, got {label.value}")
    if counts.get(Category.NAMES, 0) == 0:
        return None
    winner = _majority(counts, (Category.VIOLENCE, Category.THEOLOGICAL, Category.SECTARIAN))
    if winner is None or winner == "tie":
        return SecondPassLabel.NAMES_OTHER
    return _SECOND_PASS_OF[winner]


def classify_record(
    record: TweetRecord,
    lex: StemLexicon,
    counting: str = COUNTING_POLICY,
) -> TweetClassification:
    analysis = analyze_text(record.text, lex)
    counts = match_categories(analysis.stems, analysis.normalized_text, lex, counting)
    label = classify_tweet(counts)
    return TweetClassification(
        tweet_id=record.id,
        counts=counts,
        label=label,
        second_pass=second_pass(counts, label) if label is Label.OTHER else None,
        created_at=record.created_at,
    )


def _classify_shard(
    records: Sequence[TweetRecord],
    lex: StemLexicon,
    counting: str,
) -> list[TweetClassification]:
    return [classify_record(r, lex, counting) for r in records]


def classify_corpus(
    corpus: Corpus,
    lex: StemLexicon,
    counting: str = COUNTING_POLICY,
    workers: int = CLASSIFY_WORKERS,
    shard_size: int = SHARD_SIZE,
) -> list[TweetClassification]:
    """
    Classify every retained record of an Arabic-filtered corpus.

    Parameters
    ----------
    counting : {"occurrence", "distinct"}
        Category counting policy (see ``match_categories``).
    workers : int
        Worker processes; 1 runs in-process.
    shard_size : int
        Records per worker task.

    Returns
    -------
    list[TweetClassification]
        One entry per record, in corpus order.
    """
    records = corpus.records
    if workers <= 1 or len(records) <= shard_size:
        results = _classify_shard(records, lex, counting)
    else:
        shards = [records[i:i + shard_size] for i in range(0, len(records), shard_size)]
        logger.debug("Classifying %d shards on %d workers", len(shards), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = []
            for part in pool.map(partial(_classify_shard, lex=lex, counting=counting), shards):
                results.extend(part)

    logger.info("Classified %d tweets", len(results))
    return results


def label_counts(results: Sequence[TweetClassification]) -> dict[Label, int]:
    tally = dict.fromkeys(LABELS, 0)
    for r in results:
        tally[r.label] += 1
    return tally


def second_pass_counts(results: Sequence[TweetClassification]) -> dict[SecondPassLabel, int]:
    tally = dict.fromkeys(SECOND_PASS_LABELS, 0)
    for r in results:
        if r.second_pass is not None:
            tally[r.second_pass] += 1
    return tally
