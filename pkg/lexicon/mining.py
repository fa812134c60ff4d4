"""
lexicon/mining.py – Top-k stem frequency mining over a corpus.

Used to shortlist candidate stems before they are sorted into categories:
every retained tweet goes through tokenize → normalize → stop-word removal
→ stem, and the resulting stems are counted.
"""

import logging
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass

from arabic.isri import stem
from arabic.text import normalized_tokens
from corpus.ingest import Corpus
from lexicon.dictionary import StemLexicon, load_lexicon

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StemFrequencyTable:
    """The k most frequent stems, most frequent first, ties in codepoint order."""
    entries: tuple[tuple[str, int], ...]
    total_tokens: int

    def __len__(self) -> int:
        return len(self.entries)

    def stems(self) -> list[str]:
        return [s for s, _ in self.entries]

    def as_dict(self) -> dict[str, int]:
        return dict(self.entries)


def count_stems(texts: Iterable[str], lex: StemLexicon) -> tuple[Counter, int]:
    """Stem counts and content-token total over *texts* (mergeable per shard)."""
    counts: Counter = Counter()
    total = 0
    for text in texts:
        for token in normalized_tokens(text):
            if lex.is_stop(token.surface):
                continue
            counts[stem(token.surface)] += 1
            total += 1
    return counts, total


def top_stems(corpus: Corpus, k: int, lex: StemLexicon | None = None) -> StemFrequencyTable:
    """
    Return the *k* most frequent stems of *corpus*.

    Stop words come from *lex* (the built-in lexicon by default) and are
    removed on the surface form, before stemming.

    Raises
    ------
    ValueError
        ``k`` is smaller than 1.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    lex = lex or load_lexicon()

    counts, total = count_stems((r.text for r in corpus), lex)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:k]
    logger.info("Mined %d distinct stems from %d tokens; kept top %d", len(counts), total, len(ranked))
    return StemFrequencyTable(entries=tuple(ranked), total_tokens=total)
