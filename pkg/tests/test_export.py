from datetime import date, datetime, timedelta, timezone

import pytest

from classify.classifier import Label, SecondPassLabel, TweetClassification
from corpus.export import (
    CLASSIFICATION_HEADER,
    read_classifications,
    week_start,
    write_classifications,
)
from lexicon.dictionary import Category
from utils.errors import CorpusError

WEEK0 = datetime(2014, 6, 2, 12, 0, tzinfo=timezone.utc)


def result(i, label=Label.VIOLENCE, second=None, created_at=WEEK0, **counts):
    tally = dict.fromkeys(Category, 0)
    tally.update({Category(k.capitalize()): v for k, v in counts.items()})
    return TweetClassification(tweet_id=str(i), counts=tally, label=label,
                               second_pass=second, created_at=created_at)


@pytest.mark.parametrize(
    "ts, monday",
    [
        pytest.param(datetime(2014, 6, 2, 0, 0, tzinfo=timezone.utc), date(2014, 6, 2), id="monday-midnight"),
        pytest.param(datetime(2014, 6, 8, 23, 59, tzinfo=timezone.utc), date(2014, 6, 2), id="sunday-night"),
        pytest.param(datetime(2014, 6, 9, 1, 0, tzinfo=timezone(timedelta(hours=3))),
                     date(2014, 6, 2), id="offset-back-to-sunday-utc"),
        pytest.param(date(2014, 6, 28), date(2014, 6, 23), id="plain-date"),
    ],
)
def test_week_start(ts, monday):
    assert week_start(ts) == monday


def test_single_row(tmp_path):
    path = tmp_path / "classifications.csv"
    assert write_classifications([result(1, violence=2, names=1)], path) == 1
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == [",".join(CLASSIFICATION_HEADER), "1,2014-06-02,2,0,0,1,Violence,"]


def test_empty_results_rejected(tmp_path):
    path = tmp_path / "classifications.csv"
    with pytest.raises(ValueError):
        write_classifications([], path)
    assert not path.exists()


def test_missing_timestamp_rejected(tmp_path):
    path = tmp_path / "c.csv"
    with pytest.raises(ValueError, match="2 has no timestamp"):
        write_classifications([result(1), result(2, created_at=None)], path)
    assert not path.exists()


def test_thousand_rows(tmp_path):
    path = tmp_path / "classifications.csv"
    write_classifications([result(i) for i in range(1000)], path)
    assert len(path.read_text(encoding="utf-8").splitlines()) == 1001


def test_read_back(tmp_path):
    path = tmp_path / "classifications.csv"
    written = [
        result("a", Label.OTHER, SecondPassLabel.NAMES_VIOLENCE, violence=2, names=2),
        result("b", Label.NONE, created_at=WEEK0 + timedelta(days=9)),
    ]
    write_classifications(written, path)
    back = read_classifications(path)

    assert [r.tweet_id for r in back] == ["a", "b"]
    assert back[0].label is Label.OTHER
    assert back[0].second_pass is SecondPassLabel.NAMES_VIOLENCE
    assert back[0].counts == written[0].counts
    assert back[1].second_pass is None
    assert back[1].created_at == datetime(2014, 6, 9, tzinfo=timezone.utc)


def test_read_rejects_foreign_header(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("id,label\n1,Violence\n", encoding="utf-8")
    with pytest.raises(CorpusError):
        read_classifications(path)


def test_read_rejects_bad_label(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text(",".join(CLASSIFICATION_HEADER) + "\n1,2014-06-02,0,0,0,0,Weather,\n", encoding="utf-8")
    with pytest.raises(CorpusError):
        read_classifications(path)
