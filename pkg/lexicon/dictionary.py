"""
lexicon/dictionary.py – Category stem dictionaries, stop words and matching.

The lexicon maps four categories (Violence, Theological, Sectarian, Names)
to stem entries. Plain entries match stemmed tweet tokens by equality;
underscore compounds (hashtag-style names) match the normalized tweet text
by containment, where '_' also matches a single space.

Entry frequencies are carried as metadata only; classification never reads
them.
"""

import hashlib
import json
import logging
import re
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from arabic.isri import MarkLevel, norm_marks, stem
from utils.config import BUILTIN_LEXICON_PATH, COUNTING_POLICIES
from utils.errors import LexiconError

logger = logging.getLogger(__name__)


class Category(str, Enum):
    VIOLENCE = "Violence"
    THEOLOGICAL = "Theological"
    SECTARIAN = "Sectarian"
    NAMES = "Names"


class MatchMode(str, Enum):
    EXACT_STEM = "exact_stem"
    COMPOUND_CONTAINMENT = "compound_containment"


CATEGORIES: tuple[Category, ...] = tuple(Category)
BUILTIN_CARDINALITIES = {
    Category.VIOLENCE: 9,
    Category.THEOLOGICAL: 12,
    Category.SECTARIAN: 4,
    Category.NAMES: 9,
}


@dataclass(frozen=True)
class LexiconEntry:
    stem: str
    match_mode: MatchMode
    expected_frequency: int | None = None
    gloss: str = ""


def fold(text: str) -> str:
    """Diacritic-free, hamza-unified form used for compound containment."""
    return norm_marks(text, MarkLevel.BOTH, everywhere=True)


def _compound_pattern(entry_stem: str) -> re.Pattern:
    return re.compile("[_ ]".join(re.escape(part) for part in fold(entry_stem).split("_")))


@dataclass(frozen=True)
class StemLexicon:
    categories: Mapping[Category, tuple[LexiconEntry, ...]]
    stop_words: frozenset[str]
    version: str = ""
    source: str = ""
    _exact: Mapping[str, Category] = field(init=False, repr=False, compare=False)
    _compounds: tuple[tuple[Category, str, re.Pattern], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        exact: dict[str, Category] = {}
        compounds = []
        owner: dict[str, Category] = {}
        for category in CATEGORIES:
            for entry in self.categories.get(category, ()):
                for key in {entry.stem, self._match_key(entry)}:
                    if key in owner:
                        raise LexiconError(
                            f"Stem {entry.stem!r} appears in both {owner[key].value} and {category.value}."
                        )
                for key in {entry.stem, self._match_key(entry)}:
                    owner[key] = category
                if entry.match_mode is MatchMode.EXACT_STEM:
                    exact[self._match_key(entry)] = category
                else:
                    compounds.append((category, entry.stem, _compound_pattern(entry.stem)))
        # plain dicts: the lexicon is pickled to classification workers
        object.__setattr__(self, "categories", dict(self.categories))
        object.__setattr__(self, "_exact", exact)
        object.__setattr__(self, "_compounds", tuple(compounds))

    @staticmethod
    def _match_key(entry: LexiconEntry) -> str:
        if entry.match_mode is MatchMode.EXACT_STEM:
            return stem(entry.stem)
        return fold(entry.stem)

    def is_stop(self, word: str) -> bool:
        """Surface stop-word test, applied before stemming."""
        return bool(word) and word in self.stop_words

    def entries(self, category: Category) -> tuple[LexiconEntry, ...]:
        return self.categories.get(Category(category), ())

    def category_of(self, token_stem: str) -> Category | None:
        return self._exact.get(token_stem)

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.categories.values())


def match_categories(
    tokens: Iterable[str],
    raw_normalized_text: str,
    lex: StemLexicon,
    counting: str = "occurrence",
) -> dict[Category, int]:
    """
    Count category evidence in one tweet.

    Parameters
    ----------
    tokens : iterable of str
        Stemmed tokens, stop words already removed.
    raw_normalized_text : str
        Normalized tokens joined by spaces, searched for compound entries.
    counting : {"occurrence", "distinct"}
        ``occurrence`` counts every matching token and every non-overlapping
        compound occurrence; ``distinct`` counts each matched entry once.

    Returns
    -------
    dict
        All four categories mapped to a non-negative count.
    """
    if counting not in COUNTING_POLICIES:
        raise ValueError(f"Unknown counting policy {counting!r}")
    counts = dict.fromkeys(CATEGORIES, 0)

    matched = Counter(t for t in tokens if t in lex._exact)
    for token_stem, n in matched.items():
        counts[lex._exact[token_stem]] += n if counting == "occurrence" else 1

    if lex._compounds and raw_normalized_text:
        text = fold(raw_normalized_text)
        for category, _, pattern in lex._compounds:
            hits = len(pattern.findall(text))
            if hits:
                counts[category] += hits if counting == "occurrence" else 1
    return counts


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def _file_digest(path: Path) -> str:
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def _parse_entry(category: Category, raw: Mapping) -> LexiconEntry:
    entry_stem = str(raw.get("stem", "")).strip()
    if not entry_stem:
        raise LexiconError(f"{category.value}: entry without a stem")
    try:
        mode = MatchMode(raw.get("match_mode", MatchMode.EXACT_STEM.value))
    except ValueError:
        raise LexiconError(f"{category.value}/{entry_stem}: unknown match_mode {raw.get('match_mode')!r}")
    expected = MatchMode.COMPOUND_CONTAINMENT if "_" in entry_stem else MatchMode.EXACT_STEM
    if mode is not expected:
        raise LexiconError(f"{category.value}/{entry_stem}: match_mode must be {expected.value}")
    freq = raw.get("expected_frequency")
    return LexiconEntry(
        stem=entry_stem,
        match_mode=mode,
        expected_frequency=int(freq) if freq is not None else None,
        gloss=str(raw.get("gloss", "")),
    )


def lexicon_from_dict(raw: Mapping, version: str = "", source: str = "") -> StemLexicon:
    """Validate a parsed lexicon document and build the StemLexicon."""
    raw_categories = raw.get("categories")
    if not isinstance(raw_categories, Mapping):
        raise LexiconError("Lexicon needs a 'categories' object.")
    unknown = set(raw_categories) - {c.value for c in CATEGORIES}
    if unknown:
        raise LexiconError(f"Unknown categories: {', '.join(sorted(unknown))}")

    categories: dict[Category, tuple[LexiconEntry, ...]] = {}
    for category in CATEGORIES:
        entries = []
        seen = set()
        for item in raw_categories.get(category.value, []):
            if not item.get("enabled", True):
                continue
            entry = _parse_entry(category, item)
            if entry.stem in seen:
                raise LexiconError(f"{category.value}: duplicate stem {entry.stem!r}")
            seen.add(entry.stem)
            entries.append(entry)
        categories[category] = tuple(entries)

    stop_words = raw.get("stop_words", [])
    if not all(isinstance(w, str) and w for w in stop_words):
        raise LexiconError("stop_words must be a list of non-empty strings.")

    return StemLexicon(
        categories=categories,
        stop_words=frozenset(stop_words),
        version=version or str(raw.get("version", "")),
        source=source,
    )


def load_lexicon(path: str | Path | None = None) -> StemLexicon:
    """
    Load a lexicon file, or the built-in lexicon when *path* is None.

    Raises
    ------
    LexiconError
        Any invariant breach (duplicate stem across categories, wrong
        match_mode, wrong built-in cardinalities).
    """
    builtin = path is None
    path = Path(BUILTIN_LEXICON_PATH if builtin else path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as exc:
            raise LexiconError(f"{path}: not valid JSON ({exc})") from exc

    version = str(raw.get("version", ""))
    source = f"builtin:{version}" if builtin else f"{path}#sha256:{_file_digest(path)[:12]}"
    lex = lexicon_from_dict(raw, version=version, source=source)

    if builtin:
        sizes = {c: len(lex.entries(c)) for c in CATEGORIES}
        if sizes != BUILTIN_CARDINALITIES:
            raise LexiconError(f"Built-in lexicon has wrong category sizes: {sizes}")
    logger.info("Loaded lexicon %s (%d stems, %d stop words)", lex.source, lex.size, len(lex.stop_words))
    return lex
