"""
eval/logger.py – Logging setup, run manifest and result-file export.

Log records go to stderr only; result files (CSV / JSON) are written here
with fixed formatting so identical runs produce byte-identical files.
"""

import csv
import json
import logging
import sys
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path

from arabic.isri import load_affix_tables
from lexicon.dictionary import StemLexicon

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str | int = "INFO") -> None:
    """Install a single stderr handler on the root logger (idempotent)."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_rhetoric", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._rhetoric = True
    root.addHandler(handler)
    root.setLevel(level.upper() if isinstance(level, str) else level)


def build_run_manifest(command: str, config: Mapping, lex: StemLexicon | None = None) -> dict:
    """
    Provenance record echoed into every output directory.

    Contains the command, the resolved configuration, the lexicon
    source/version and the ISRI table version. No wall-clock data.
    """
    manifest = {
        "command": command,
        "config": dict(config),
        "isri_tables": load_affix_tables().version,
    }
    if lex is not None:
        manifest["lexicon"] = {"source": lex.source, "version": lex.version, "stems": lex.size}
    return manifest


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def export_rows_csv(rows: Iterable[Mapping], path: str | Path, fieldnames: Sequence[str]) -> int:
    """Write dict rows to a UTF-8 CSV; floats use their shortest round-trip form."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([_cell(row.get(name)) for name in fieldnames])
            count += 1
    logging.getLogger(__name__).info("Wrote %d rows to %s", count, path)
    return count


def export_json(obj, path: str | Path) -> None:
    """Write *obj* as indented JSON with sorted keys."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(obj, f, indent=2, sort_keys=True, ensure_ascii=False, default=str)
        f.write("\n")
