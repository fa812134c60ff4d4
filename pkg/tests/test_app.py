import csv
import json
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

from app import RunConfig, build_parser, main

WEEK0 = datetime(2014, 6, 2, 12, 0, tzinfo=timezone.utc)
DATA = Path(__file__).parent / "data"
EXAMPLES = str(DATA / "example_tweets.jsonl")


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


def tweet(i, text, week=0, lang="ar"):
    ts = (WEEK0 + timedelta(weeks=week)).strftime("%Y-%m-%dT%H:%M:%SZ")
    return {"id": str(i), "created_at": ts, "user_id": "u", "lang": lang, "text": text}


def weekly_corpus(violence_per_week, theological=4, per_week=20):
    rows = []
    for week, violence in enumerate(violence_per_week):
        texts = ["قتل"] * violence + ["دين"] * theological
        texts += ["شمس"] * (per_week - len(texts))
        rows += [tweet(f"{week}-{i}", text, week) for i, text in enumerate(texts)]
    return rows


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

def test_classify_writes_reports(tmp_path):
    out = tmp_path / "out"
    assert main(["classify", "--input", EXAMPLES, "--out", str(out)]) == 0

    for name in ("classifications.csv", "category_summary.csv", "second_pass_summary.csv", "run_config.json"):
        assert (out / name).is_file(), name

    assert len(read_csv(out / "classifications.csv")) == 8
    rows = {r["category"]: r for r in read_csv(out / "category_summary.csv")}
    assert int(rows["Total"]["count"]) == 8
    for label in ("Violence", "Theological", "Sectarian", "Names", "Other", "None"):
        count = int(rows[label]["count"])
        assert float(rows[label]["pct_total"]) == pytest.approx(100 * count / 8)

    manifest = json.loads((out / "run_config.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "classify"
    assert manifest["config"]["week_convention"] == "iso-monday-utc"
    assert manifest["corpus"]["retained"] == 8
    assert manifest["lexicon"]["source"].startswith("builtin:")


def test_classify_is_deterministic(tmp_path):
    out = tmp_path / "out"
    main(["classify", "--input", EXAMPLES, "--out", str(out)])
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    main(["classify", "--input", EXAMPLES, "--out", str(out)])
    assert {p.name: p.read_bytes() for p in out.iterdir()} == first


def test_non_arabic_corpus_fails(tmp_path, write_jsonl):
    path = write_jsonl([tweet(1, "hello world", lang="en")])
    assert main(["classify", "--input", str(path), "--out", str(tmp_path / "out")]) == 1


def test_broken_lexicon_fails(tmp_path):
    lexicon = tmp_path / "lex.json"
    lexicon.write_text("{", encoding="utf-8")
    args = ["classify", "--input", EXAMPLES, "--lexicon", str(lexicon), "--out", str(tmp_path / "out")]
    assert main(args) == 1


# ---------------------------------------------------------------------------
# Usage errors
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [
        pytest.param(["topstems", "--input", EXAMPLES, "--top-k", "0"], id="top-k-zero"),
        pytest.param(["series", "--input", EXAMPLES], id="series-without-events"),
        pytest.param(["classify", "--input", "missing.jsonl"], id="missing-input"),
        pytest.param(["classify"], id="no-input"),
        pytest.param(["classify", "--input", EXAMPLES, "--counting", "weighted"], id="bad-choice"),
        pytest.param(["cluster", "--input", EXAMPLES], id="unknown-command"),
    ],
)
def test_usage_errors(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path / "out")]) == 2


def test_top_k_defaults_to_hundred():
    args = build_parser().parse_args(["topstems", "--input", EXAMPLES])
    assert RunConfig.from_args(args).top_k == 100


# ---------------------------------------------------------------------------
# topstems
# ---------------------------------------------------------------------------

def test_topstems_single_tweet(tmp_path, write_jsonl):
    path = write_jsonl([tweet(1, "قتل قتل جهاد")])
    out = tmp_path / "out"
    assert main(["topstems", "--input", str(path), "--top-k", "2", "--out", str(out)]) == 0
    assert (out / "top_stems.csv").read_text(encoding="utf-8") == "stem,count\nقتل,2\nجهد,1\n"
    manifest = json.loads((out / "run_config.json").read_text(encoding="utf-8"))
    assert manifest["total_tokens"] == 3


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

def write_events(tmp_path, week):
    day = (WEEK0 + timedelta(weeks=week, days=2)).date().isoformat()
    path = tmp_path / "events.csv"
    path.write_text(
        "name,date,description,categories\n"
        f"Spike,{day},synthetic,Violence;Theological\n",
        encoding="utf-8",
    )
    return path


def deltas_by_series(out):
    return {r["series"]: r for r in read_csv(out / "event_deltas.csv")}


def test_series_spike(tmp_path, write_jsonl):
    violence = [2, 3] * 6
    violence[6] = 10
    corpus = write_jsonl(weekly_corpus(violence))
    out = tmp_path / "out"
    argv = ["series", "--input", str(corpus), "--events", str(write_events(tmp_path, 6)), "--out", str(out)]
    assert main(argv) == 0

    deltas = deltas_by_series(out)
    assert float(deltas["violence"]["delta"]) > 0
    assert float(deltas["violence"]["delta_sd"]) > 2
    assert abs(float(deltas["theological"]["delta"])) < 1e-9

    plot = read_csv(out / "plot_data.csv")
    assert len(plot) == 12 * 6
    spike = next(r for r in plot if r["series"] == "violence" and r["count"] == "10")
    assert float(spike["ratio"]) == pytest.approx(0.5)
    assert (out / "plot_data_events.csv").read_text(encoding="utf-8").splitlines()[1].startswith("Spike,")


def test_series_flat(tmp_path, write_jsonl):
    corpus = write_jsonl(weekly_corpus([3] * 10))
    out = tmp_path / "out"
    argv = ["series", "--input", str(corpus), "--events", str(write_events(tmp_path, 5)), "--out", str(out)]
    assert main(argv) == 0
    for row in read_csv(out / "event_deltas.csv"):
        assert abs(float(row["delta"])) < 1e-9
        assert float(row["delta_sd"]) == 0.0


@pytest.mark.parametrize("flag", ["--figure1-denominator", "--denominator"])
def test_series_global_denominator(tmp_path, write_jsonl, flag):
    corpus = write_jsonl(weekly_corpus([2, 3] * 6))
    out = tmp_path / "out"
    argv = ["series", "--input", str(corpus), "--events", str(write_events(tmp_path, 6)),
            flag, "global", "--out", str(out)]
    assert main(argv) == 0

    plot = read_csv(out / "plot_data.csv")
    assert {r["denominator"] for r in plot} == {"240"}
    violence = [r for r in plot if r["series"] == "violence"]
    assert sum(float(r["ratio"]) for r in violence) == pytest.approx(30 / 240)
    manifest = json.loads((out / "run_config.json").read_text(encoding="utf-8"))
    assert manifest["config"]["series_denominator"] == "global"


def test_series_builtin_events(tmp_path, write_jsonl):
    corpus = write_jsonl(weekly_corpus([2, 3] * 6))
    out = tmp_path / "out"
    assert main(["series", "--input", str(corpus), "--builtin-events", "--out", str(out)]) == 0

    assert len((out / "plot_data_events.csv").read_text(encoding="utf-8").splitlines()) == 27
    # windows that fit inside 2014-06-02 .. 2014-08-18; the rest are skipped
    assert {r["event"] for r in read_csv(out / "event_deltas.csv")} == {
        "Mosul and Takrit Captured",
        "Iran Deploys",
        "Iraq (USA Support)",
        "Caliphate",
        "Shaer Gas Battle",
        "Sinjar Captured",
        "US Strikes in Iraq",
    }
