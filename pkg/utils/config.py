"""
utils/config.py – Central configuration for the rhetoric tracker.

All tuneable parameters live here so analysts can customise a run without
touching core logic. Every constant can be overridden with a ``RHETORIC_*``
environment variable (or a ``.env`` file); CLI flags override both.
"""

import os
from pathlib import Path

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv is optional at runtime


def get_env_int(name: str, default: int) -> int:
    """Integer override from the environment, falling back on bad values."""
    raw = os.getenv(name, "")
    try:
        return int(raw) if raw else default
    except ValueError:
        return default


def get_env_float(name: str, default: float) -> float:
    """Float override from the environment, falling back on bad values."""
    raw = os.getenv(name, "")
    try:
        return float(raw) if raw else default
    except ValueError:
        return default


def get_env_choice(name: str, default: str, choices: tuple[str, ...]) -> str:
    """String override restricted to *choices*."""
    raw = os.getenv(name, "").strip().lower()
    return raw if raw in choices else default


# ── Bundled data ────────────────────────────────────────────────────────
_ROOT = Path(__file__).resolve().parent.parent
ISRI_TABLES_PATH: Path = _ROOT / "arabic" / "data" / "isri_tables.json"
BUILTIN_LEXICON_PATH: Path = _ROOT / "lexicon" / "data" / "builtin_lexicon.json"
BUILTIN_EVENTS_PATH: Path = _ROOT / "timeline" / "data" / "events.csv"

# ── Corpus filtering ────────────────────────────────────────────────────
# share of letter codepoints that must be Arabic when no lang tag is present
ARABIC_LETTER_THRESHOLD: float = get_env_float("RHETORIC_ARABIC_THRESHOLD", 0.5)

# ── Stem mining ─────────────────────────────────────────────────────────
TOP_K: int = get_env_int("RHETORIC_TOP_K", 100)

# ── Classification ──────────────────────────────────────────────────────
COUNTING_POLICIES: tuple[str, ...] = ("occurrence", "distinct")
COUNTING_POLICY: str = get_env_choice("RHETORIC_COUNTING", "occurrence", COUNTING_POLICIES)
CLASSIFY_WORKERS: int = get_env_int("RHETORIC_WORKERS", 1)
SHARD_SIZE: int = get_env_int("RHETORIC_SHARD_SIZE", 5000)   # tweets per worker task

# ── Timeline ────────────────────────────────────────────────────────────
DENOMINATORS: tuple[str, ...] = ("weekly", "global")
SERIES_DENOMINATOR: str = get_env_choice("RHETORIC_DENOMINATOR", "weekly", DENOMINATORS)
PRE_WEEKS: int = get_env_int("RHETORIC_PRE_WEEKS", 1)
POST_WEEKS: int = get_env_int("RHETORIC_POST_WEEKS", 2)

# ── Output / logging ────────────────────────────────────────────────────
DEFAULT_OUTPUT_DIR: str = os.getenv("RHETORIC_OUT", "./out")
LOG_LEVEL: str = os.getenv("RHETORIC_LOG_LEVEL", "INFO").upper()
