import math
from datetime import date, datetime, timedelta, timezone

import pytest

from classify.classifier import Label, SecondPassLabel, TweetClassification
from lexicon.dictionary import Category
from timeline.events import EventRecord, event_window_summary, load_events
from timeline.series import aggregate_weekly
from utils.errors import EventFileError, WindowRangeError

WEEK0 = datetime(2014, 6, 2, 12, 0, tzinfo=timezone.utc)
HEADER = "name,date,description,categories\n"


def weekly_results(label_counts_per_week, per_week=200):
    """One week per dict of label -> count; the rest of each week is None."""
    out = []
    for w, label_counts in enumerate(label_counts_per_week):
        labels = [label for label, n in label_counts.items() for _ in range(n)]
        labels += [Label.NONE] * (per_week - len(labels))
        for i, label in enumerate(labels):
            out.append(TweetClassification(
                tweet_id=f"{w}-{i}",
                counts=dict.fromkeys(Category, 0),
                label=label,
                created_at=WEEK0 + timedelta(weeks=w),
            ))
    return out


def event_at(week_index, name="Spike"):
    return EventRecord(name, (WEEK0 + timedelta(weeks=week_index, days=3)).date())


# ---------------------------------------------------------------------------
# Event file
# ---------------------------------------------------------------------------

def test_bundled_events():
    events = load_events()
    assert len(events) == 26
    assert len({e.name for e in events}) == 26
    fallujah = events[0]
    assert (fallujah.name, fallujah.date) == ("Fallujah Captured", date(2014, 1, 5))
    caliphate = next(e for e in events if e.name == "Caliphate")
    assert caliphate.date == date(2014, 6, 28)
    assert "Theological" in caliphate.related_categories
    assert [e.date for e in events] == sorted(e.date for e in events)


def test_empty_file(tmp_path):
    path = tmp_path / "events.csv"
    path.write_text("", encoding="utf-8")
    assert load_events(path) == []


def test_header_only_and_blank_rows(tmp_path):
    path = tmp_path / "events.csv"
    path.write_text(HEADER + ",,,\nCaliphate,2014-06-28,,Theological\n", encoding="utf-8")
    assert [e.name for e in load_events(path)] == ["Caliphate"]


def test_bad_date_names_line(tmp_path):
    path = tmp_path / "events.csv"
    path.write_text(HEADER + "Caliphate,2014-06-28,,\nLater,sometime,,\n", encoding="utf-8")
    with pytest.raises(EventFileError) as info:
        load_events(path)
    assert info.value.line == 3
    assert "line 3" in str(info.value)


@pytest.mark.parametrize(
    "body",
    [
        pytest.param("A,2014-06-28,,\nA,2014-07-01,,\n", id="duplicate-name"),
        pytest.param("A,2014-06-28,,Weather\n", id="unknown-category"),
        pytest.param(",2014-06-28,,Violence\n", id="missing-name"),
    ],
)
def test_rejected_rows(tmp_path, body):
    path = tmp_path / "events.csv"
    path.write_text(HEADER + body, encoding="utf-8")
    with pytest.raises(EventFileError):
        load_events(path)


def test_wrong_header(tmp_path):
    path = tmp_path / "events.csv"
    path.write_text("event,when\nA,2014-06-28\n", encoding="utf-8")
    with pytest.raises(EventFileError) as info:
        load_events(path)
    assert info.value.line == 1


# ---------------------------------------------------------------------------
# Window summaries
# ---------------------------------------------------------------------------

def spike_weeks(spike_at=10, weeks=20):
    plan = []
    for w in range(weeks):
        violence = 30 if w == spike_at else (9 if w % 2 == 0 else 11)
        other = 18 if w % 2 == 0 else 22
        plan.append({Label.VIOLENCE: violence, Label.OTHER: other})
    return plan


def test_spike_stands_out():
    series = aggregate_weekly(weekly_results(spike_weeks()))
    summary = event_window_summary(series, event_at(10), 1, 2, Label.VIOLENCE)

    assert summary.event_week == series[10].week_start
    assert summary.baseline_mean == pytest.approx(0.05)
    assert summary.window_mean == pytest.approx(0.07625)
    assert summary.delta == pytest.approx(0.02625)
    assert summary.delta_sd == pytest.approx(5.25)
    assert summary.series == "violence"


def test_unspiked_label_stays_flat():
    series = aggregate_weekly(weekly_results(spike_weeks()))
    summary = event_window_summary(series, event_at(10), 1, 2, "other")
    assert summary.delta == pytest.approx(0.0, abs=1e-12)
    assert abs(summary.delta_sd) < 1e-6


def test_flat_series_has_zero_delta():
    series = aggregate_weekly(weekly_results([{Label.VIOLENCE: 10}] * 8))
    summary = event_window_summary(series, event_at(4), 1, 2, Label.VIOLENCE)
    assert summary.delta == pytest.approx(0.0, abs=1e-12)
    assert summary.delta_sd == 0.0


def test_constant_baseline_with_spike_is_infinite():
    plan = [{Label.VIOLENCE: 10}] * 8
    plan[4] = {Label.VIOLENCE: 40}
    series = aggregate_weekly(weekly_results(plan))
    summary = event_window_summary(series, event_at(4), 1, 2, Label.VIOLENCE)
    assert summary.delta > 0
    assert summary.delta_sd == math.inf


def test_empty_weeks_left_out():
    results = weekly_results(spike_weeks())
    # drop week 12 entirely
    results = [r for r in results if not r.tweet_id.startswith("12-")]
    series = aggregate_weekly(results)
    assert series[12].total == 0
    summary = event_window_summary(series, event_at(10), 1, 2, Label.VIOLENCE)
    assert summary.window_mean == pytest.approx((0.055 + 0.15 + 0.055) / 3)


@pytest.mark.parametrize(
    "event",
    [
        pytest.param(EventRecord("Before", date(2014, 5, 1)), id="before-series"),
        pytest.param(event_at(0), id="no-room-before"),
        pytest.param(event_at(18), id="no-room-after"),
        pytest.param(event_at(40), id="after-series"),
    ],
)
def test_window_outside_series(event):
    series = aggregate_weekly(weekly_results(spike_weeks()))
    with pytest.raises(WindowRangeError):
        event_window_summary(series, event, 1, 2, Label.VIOLENCE)


def test_window_lengths_must_be_positive():
    series = aggregate_weekly(weekly_results(spike_weeks()))
    with pytest.raises(ValueError):
        event_window_summary(series, event_at(10), 0, 2, Label.VIOLENCE)


def test_second_pass_series_without_data():
    series = aggregate_weekly(weekly_results(spike_weeks()))
    with pytest.raises(WindowRangeError):
        event_window_summary(series, event_at(10), 1, 2, SecondPassLabel.NAMES_VIOLENCE)


def test_summary_row():
    series = aggregate_weekly(weekly_results(spike_weeks()))
    row = event_window_summary(series, event_at(10), 1, 2, Label.VIOLENCE).as_row()
    assert row["event"] == "Spike"
    assert row["pre_weeks"] == 1
    assert float(row["delta_sd"]) == pytest.approx(5.25)
