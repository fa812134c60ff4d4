"""
app.py – Arabic tweet rhetoric tracker (command-line entry point)

Run with:  python app.py <command> --input tweets.jsonl [options]

Commands:
  classify  – label every tweet (Violence / Theological / Sectarian / Names /
              Other / None), second-pass Names sub-labels, distribution summaries
  topstems  – the k most frequent stems after stop-word removal
  series    – weekly label ratios, event overlay and event-window deltas

Exit status: 0 success, 1 pipeline or I/O failure, 2 usage error.
"""

import argparse
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

# ---------------------------------------------------------------------------
# Ensure project root is on the Python path
# ---------------------------------------------------------------------------
PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from classify.classifier import classify_corpus  # noqa: E402
from corpus.export import write_classifications  # noqa: E402
from corpus.ingest import FORMATS, Corpus, filter_arabic, ingest_many  # noqa: E402
from eval.logger import build_run_manifest, configure_logging, export_json, export_rows_csv  # noqa: E402
from eval.metrics import (  # noqa: E402
    CATEGORY_SUMMARY_FIELDS,
    SECOND_PASS_SUMMARY_FIELDS,
    category_summary,
    second_pass_summary,
)
from lexicon.dictionary import load_lexicon  # noqa: E402
from lexicon.mining import top_stems  # noqa: E402
from timeline.events import event_window_summary, load_events  # noqa: E402
from timeline.series import aggregate_weekly, emit_plot_data  # noqa: E402
from utils.config import (  # noqa: E402
    CLASSIFY_WORKERS,
    COUNTING_POLICIES,
    COUNTING_POLICY,
    DEFAULT_OUTPUT_DIR,
    DENOMINATORS,
    SERIES_DENOMINATOR,
    LOG_LEVEL,
    POST_WEEKS,
    PRE_WEEKS,
    TOP_K,
)
from utils.errors import ConfigError, EmptyCorpusError, PipelineError, WindowRangeError  # noqa: E402

logger = logging.getLogger(__name__)

COMMANDS = ("classify", "topstems", "series")
EVENT_DELTA_FIELDS = (
    "event", "date", "series", "event_week", "pre_weeks", "post_weeks",
    "baseline_mean", "window_mean", "delta", "delta_sd",
)


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    out: str = DEFAULT_OUTPUT_DIR
    input_format: str | None = None
    lexicon: str | None = None             # None: built-in lexicon
    events: str | None = None
    builtin_events: bool = False
    top_k: int = TOP_K
    counting: str = COUNTING_POLICY
    series_denominator: str = SERIES_DENOMINATOR
    week_convention: str = field(default="iso-monday-utc", init=False)
    pre_weeks: int = PRE_WEEKS
    post_weeks: int = POST_WEEKS
    workers: int = CLASSIFY_WORKERS

    def validate(self) -> None:
        """Raise ConfigError before any stage runs."""
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not self.inputs:
            raise ConfigError("at least one --input is required")
        for path in self.inputs:
            if not Path(path).is_file():
                raise ConfigError(f"input file not found: {path}")
        if self.lexicon is not None and not Path(self.lexicon).is_file():
            raise ConfigError(f"lexicon file not found: {self.lexicon}")
        if self.top_k < 1:
            raise ConfigError(f"--top-k must be at least 1 (got {self.top_k})")
        if self.pre_weeks < 1 or self.post_weeks < 1:
            raise ConfigError("--pre-weeks and --post-weeks must be at least 1")
        if self.workers < 1:
            raise ConfigError("--workers must be at least 1")
        if self.counting not in COUNTING_POLICIES:
            raise ConfigError(f"unknown counting policy {self.counting!r}")
        if self.series_denominator not in DENOMINATORS:
            raise ConfigError(f"unknown denominator {self.series_denominator!r}")
        if self.command == "series":
            if self.events is None and not self.builtin_events:
                raise ConfigError("series needs --events PATH or --builtin-events")
            if self.events is not None and not Path(self.events).is_file():
                raise ConfigError(f"events file not found: {self.events}")

    def as_dict(self) -> dict:
        data = asdict(self)
        data["inputs"] = list(self.inputs)
        return data

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        config = cls(
            command=args.command,
            inputs=tuple(args.input or ()),
            out=args.out,
            input_format=args.format,
            lexicon=args.lexicon,
            events=getattr(args, "events", None),
            builtin_events=getattr(args, "builtin_events", False),
            top_k=getattr(args, "top_k", TOP_K),
            counting=args.counting,
            series_denominator=getattr(args, "series_denominator", SERIES_DENOMINATOR),
            pre_weeks=getattr(args, "pre_weeks", PRE_WEEKS),
            post_weeks=getattr(args, "post_weeks", POST_WEEKS),
            workers=args.workers,
        )
        config.validate()
        return config


# ---------------------------------------------------------------------------
# Shared stages
# ---------------------------------------------------------------------------

def _load_corpus(config: RunConfig) -> Corpus:
    corpus = filter_arabic(ingest_many(config.inputs, config.input_format))
    if not corpus.records:
        raise EmptyCorpusError("No Arabic tweets left after language filtering.")
    return corpus


def _corpus_counts(corpus: Corpus) -> dict:
    return {
        "ingested": corpus.ingested,
        "retained": corpus.retained,
        "rejected": dict(sorted(corpus.rejected.items())),
    }


def _output_dir(config: RunConfig) -> Path:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_manifest(out: Path, config: RunConfig, lex, corpus: Corpus, **extra) -> None:
    manifest = build_run_manifest(config.command, config.as_dict(), lex)
    manifest["corpus"] = _corpus_counts(corpus)
    manifest.update(extra)
    export_json(manifest, out / "run_config.json")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_classify(config: RunConfig) -> int:
    lex = load_lexicon(config.lexicon)
    corpus = _load_corpus(config)
    results = classify_corpus(corpus, lex, counting=config.counting, workers=config.workers)

    out = _output_dir(config)
    write_classifications(results, out / "classifications.csv")
    categories = category_summary(results)
    export_rows_csv(categories.as_rows(), out / "category_summary.csv", CATEGORY_SUMMARY_FIELDS)
    second = second_pass_summary(results)
    export_rows_csv(second.as_rows(), out / "second_pass_summary.csv", SECOND_PASS_SUMMARY_FIELDS)
    _write_manifest(out, config, lex, corpus)

    logger.info(
        "Classified %d tweets: %d categorized, %d second-pass",
        categories.total, categories.categorized, second.total,
    )
    return 0


def cmd_topstems(config: RunConfig) -> int:
    lex = load_lexicon(config.lexicon)
    corpus = _load_corpus(config)
    table = top_stems(corpus, config.top_k, lex)

    out = _output_dir(config)
    export_rows_csv(
        ({"stem": s, "count": n} for s, n in table.entries),
        out / "top_stems.csv",
        ("stem", "count"),
    )
    _write_manifest(out, config, lex, corpus, total_tokens=table.total_tokens)
    return 0


def cmd_series(config: RunConfig) -> int:
    lex = load_lexicon(config.lexicon)
    events = load_events(config.events)
    corpus = _load_corpus(config)
    results = classify_corpus(corpus, lex, counting=config.counting, workers=config.workers)
    series = aggregate_weekly(results, denominator=config.series_denominator)

    out = _output_dir(config)
    emit_plot_data(series, events, out / "plot_data.csv")

    deltas = []
    for event in events:
        for label in event.related_categories:
            try:
                summary = event_window_summary(series, event, config.pre_weeks, config.post_weeks, label)
            except WindowRangeError as exc:
                logger.warning("Skipping %s/%s: %s", event.name, label, exc)
                continue
            deltas.append(summary.as_row())
    export_rows_csv(deltas, out / "event_deltas.csv", EVENT_DELTA_FIELDS)
    _write_manifest(out, config, lex, corpus, weeks=len(series), events=len(events))
    return 0


HANDLERS = {"classify": cmd_classify, "topstems": cmd_topstems, "series": cmd_series}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", metavar="PATH",
                        help="tweet file (JSON Lines or CSV); repeat for several files")
    common.add_argument("--format", choices=FORMATS, default=None,
                        help="input format (default: from the file extension)")
    common.add_argument("--lexicon", metavar="PATH", default=None,
                        help="lexicon JSON (default: built-in lexicon)")
    common.add_argument("--out", metavar="DIR", default=DEFAULT_OUTPUT_DIR,
                        help=f"output directory (default: {DEFAULT_OUTPUT_DIR})")
    common.add_argument("--counting", choices=COUNTING_POLICIES, default=COUNTING_POLICY,
                        help="count every matching token or each matched stem once")
    common.add_argument("--workers", type=int, default=CLASSIFY_WORKERS,
                        help="classification worker processes")
    common.add_argument("--log-level", default=LOG_LEVEL,
                        choices=("DEBUG", "INFO", "WARNING", "ERROR"), type=str.upper)

    parser = argparse.ArgumentParser(prog="rhetoric", description="Arabic tweet rhetoric tracker")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", parents=[common], help="classify tweets and write summaries")

    topstems = sub.add_parser("topstems", parents=[common], help="mine the most frequent stems")
    topstems.add_argument("--top-k", type=int, default=TOP_K, help=f"stems to keep (default: {TOP_K})")

    series = sub.add_parser("series", parents=[common], help="weekly ratios and event deltas")
    series.add_argument("--events", metavar="PATH", default=None, help="events CSV")
    series.add_argument("--builtin-events", action="store_true", help="use the bundled event list")
    series.add_argument("--figure1-denominator", "--denominator", dest="series_denominator",
                        choices=DENOMINATORS, default=SERIES_DENOMINATOR,
                        help="divide by weekly totals or by corpus totals")
    series.add_argument("--pre-weeks", type=int, default=PRE_WEEKS)
    series.add_argument("--post-weeks", type=int, default=POST_WEEKS)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(args.log_level)
    try:
        config = RunConfig.from_args(args)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2

    try:
        return HANDLERS[config.command](config)
    except (PipelineError, OSError, ValueError) as exc:
        logger.error("%s failed: %s", config.command, exc)
        print(f"{parser.prog}: {config.command} failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
