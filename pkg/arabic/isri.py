"""
arabic/isri.py – ISRI Arabic root extraction without a root dictionary.

Pipeline (per word):
  1. Strip diacritics (short vowels, shadda, sukun)
  2. Return protected words untouched
  3. Remove one length-3 or length-2 prefix, then one length-3 or length-2 suffix
  4. Drop a connective waw in front of a word starting with waw
  5. Unify the initial hamza-carrier alef
  6. Match length-indexed pattern templates (4..7 letters) to reach a 3- or
     4-letter root, falling back to single-letter affix stripping

Affixes and templates are data (``arabic/data/isri_tables.json``), loaded once.
Underscore compounds (hashtags) skip root extraction and are only
normalized, so they keep matching the compound lexicon entries.
"""

import json
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path

from utils.config import ISRI_TABLES_PATH

logger = logging.getLogger(__name__)


class MarkLevel(str, Enum):
    DIACRITICS = "diacritics"
    HAMZA = "hamza"
    BOTH = "both"


@dataclass(frozen=True)
class PatternRule:
    """One morphological template: letter constraints plus the kept positions."""
    pattern: str
    when: tuple[tuple[int, frozenset[str]], ...]
    keep: tuple[int, ...]
    same: tuple[int, int] | None = None

    def matches(self, word: str) -> bool:
        if not all(word[pos] in letters for pos, letters in self.when):
            return False
        if self.same is not None and word[self.same[0]] != word[self.same[1]]:
            return False
        return True

    def extract(self, word: str) -> str:
        return "".join(word[i] for i in self.keep)


@dataclass(frozen=True)
class TemplateGroup:
    rules: tuple[PatternRule, ...]
    strip_on_miss: bool


@dataclass(frozen=True, eq=False)
class AffixTables:
    version: str
    diacritics: frozenset[str]
    hamza_carriers: frozenset[str]
    bare_alef: str
    p3: tuple[str, ...]
    p2: tuple[str, ...]
    p1: tuple[str, ...]
    s3: tuple[str, ...]
    s2: tuple[str, ...]
    s1: tuple[str, ...]
    length4: TemplateGroup
    length5_root3: TemplateGroup
    length5_root4: TemplateGroup
    length6_root3: TemplateGroup
    length6_root4: TemplateGroup
    protected_words: frozenset[str]


def _parse_group(raw: dict) -> TemplateGroup:
    rules = []
    for rule in raw["rules"]:
        same = rule.get("same")
        rules.append(PatternRule(
            pattern=rule["pattern"],
            when=tuple((int(pos), frozenset(letters)) for pos, letters in rule["when"]),
            keep=tuple(int(i) for i in rule["keep"]),
            same=(int(same[0]), int(same[1])) if same else None,
        ))
    return TemplateGroup(rules=tuple(rules), strip_on_miss=bool(raw["strip_on_miss"]))


def _check_distinct(name: str, items: list[str], length: int) -> None:
    if len(set(items)) != len(items):
        raise ValueError(f"ISRI table {name!r} has duplicate entries")
    if any(len(item) != length for item in items):
        raise ValueError(f"ISRI table {name!r} must hold length-{length} affixes")


@lru_cache(maxsize=None)
def load_affix_tables(path: Path = ISRI_TABLES_PATH) -> AffixTables:
    """Load and validate the affix/pattern tables (cached per path)."""
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)

    for name, length in (("p3", 3), ("p2", 2), ("p1", 1), ("s3", 3), ("s2", 2), ("s1", 1)):
        _check_distinct(name, raw[name], length)

    templates = raw["templates"]
    tables = AffixTables(
        version=raw["version"],
        diacritics=frozenset(raw["diacritics"]),
        hamza_carriers=frozenset(raw["hamza_carriers"]),
        bare_alef=raw["bare_alef"],
        p3=tuple(raw["p3"]),
        p2=tuple(raw["p2"]),
        p1=tuple(raw["p1"]),
        s3=tuple(raw["s3"]),
        s2=tuple(raw["s2"]),
        s1=tuple(raw["s1"]),
        length4=_parse_group(templates["length4"]),
        length5_root3=_parse_group(templates["length5_root3"]),
        length5_root4=_parse_group(templates["length5_root4"]),
        length6_root3=_parse_group(templates["length6_root3"]),
        length6_root4=_parse_group(templates["length6_root4"]),
        protected_words=frozenset(raw["protected_words"]),
    )
    logger.debug("Loaded ISRI tables %s from %s", tables.version, path)
    return tables


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

def norm_marks(
    word: str,
    level: MarkLevel | str = MarkLevel.BOTH,
    *,
    everywhere: bool = False,
    tables: AffixTables | None = None,
) -> str:
    """
    Remove diacritics and/or unify hamza-carrier alefs to bare alef.

    Parameters
    ----------
    word : str
        Word to normalize.
    level : MarkLevel
        ``diacritics``, ``hamza`` or ``both``.
    everywhere : bool
        Unify every hamza carrier instead of only the word-initial one.
        Root extraction uses the initial-only form; compounds use this.
    """
    t = tables or load_affix_tables()
    level = MarkLevel(level)
    if level in (MarkLevel.DIACRITICS, MarkLevel.BOTH):
        word = "".join(ch for ch in word if ch not in t.diacritics)
    if level in (MarkLevel.HAMZA, MarkLevel.BOTH) and word:
        if everywhere:
            word = "".join(t.bare_alef if ch in t.hamza_carriers else ch for ch in word)
        elif word[0] in t.hamza_carriers:
            word = t.bare_alef + word[1:]
    return word


# ---------------------------------------------------------------------------
# Affix stripping
# ---------------------------------------------------------------------------

def strip_prefixes_32(word: str, tables: AffixTables | None = None) -> str:
    """Remove one length-3 prefix (word ≥ 6) or else one length-2 prefix (word ≥ 5)."""
    t = tables or load_affix_tables()
    if len(word) >= 6:
        for prefix in t.p3:
            if word.startswith(prefix):
                return word[3:]
    if len(word) >= 5:
        for prefix in t.p2:
            if word.startswith(prefix):
                return word[2:]
    return word


def strip_suffixes_32(word: str, tables: AffixTables | None = None) -> str:
    """Remove one length-3 suffix (word ≥ 6) or else one length-2 suffix (word ≥ 5)."""
    t = tables or load_affix_tables()
    if len(word) >= 6:
        for suffix in t.s3:
            if word.endswith(suffix):
                return word[:-3]
    if len(word) >= 5:
        for suffix in t.s2:
            if word.endswith(suffix):
                return word[:-2]
    return word


def _strip_suffix_1(word: str, t: AffixTables) -> str:
    for suffix in t.s1:
        if word.endswith(suffix):
            return word[:-1]
    return word


def _strip_prefix_1(word: str, t: AffixTables) -> str:
    for prefix in t.p1:
        if word.startswith(prefix):
            return word[1:]
    return word


def _drop_connective_waw(word: str) -> str:
    if len(word) >= 4 and word.startswith("وو"):
        return word[1:]
    return word


# ---------------------------------------------------------------------------
# Pattern matching
# ---------------------------------------------------------------------------

def _apply_templates(word: str, group: TemplateGroup, t: AffixTables) -> str:
    for rule in group.rules:
        if rule.matches(word):
            return rule.extract(word)
    if group.strip_on_miss:
        length = len(word)
        word = _strip_suffix_1(word, t)
        if len(word) == length:
            word = _strip_prefix_1(word, t)
    return word


def _finish_length5(word: str, t: AffixTables) -> str:
    if len(word) == 4:
        return _apply_templates(word, t.length4, t)
    if len(word) == 5:
        return _apply_templates(word, t.length5_root4, t)
    return word


def _process_length6(word: str, t: AffixTables) -> str:
    word = _apply_templates(word, t.length6_root3, t)
    if len(word) == 5:
        word = _apply_templates(word, t.length5_root3, t)
        return _finish_length5(word, t)
    if len(word) == 6:
        return _apply_templates(word, t.length6_root4, t)
    return word


@lru_cache(maxsize=200_000)
def _stem(word: str, t: AffixTables) -> str:
    original = word
    word = norm_marks(word, MarkLevel.DIACRITICS, tables=t)
    if not word:
        return original
    if "_" in word:
        return norm_marks(word, MarkLevel.HAMZA, everywhere=True, tables=t)
    if word in t.protected_words:
        return word

    word = strip_prefixes_32(word, t)
    word = strip_suffixes_32(word, t)
    word = _drop_connective_waw(word)
    word = norm_marks(word, MarkLevel.HAMZA, tables=t)

    length = len(word)
    if length == 4:
        word = _apply_templates(word, t.length4, t)
    elif length == 5:
        word = _apply_templates(word, t.length5_root3, t)
        word = _finish_length5(word, t)
    elif length == 6:
        word = _process_length6(word, t)
    elif length == 7:
        word = _strip_suffix_1(word, t)
        if len(word) == 7:
            word = _strip_prefix_1(word, t)
        if len(word) == 6:
            word = _process_length6(word, t)
    return word


def stem(word: str, tables: AffixTables | None = None) -> str:
    """
    Reduce a normalized Arabic token to its ISRI root.

    Words of 3 letters or fewer come back as they are (after diacritic and
    hamza normalization); words longer than 7 letters after affix removal
    are returned in their stripped form.

    Examples
    --------
    >>> stem("المسلمين")
    'سلم'
    >>> stem("يكتبون")
    'كتب'
    """
    return _stem(word, tables or load_affix_tables())
