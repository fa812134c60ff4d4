import json
from datetime import datetime, timezone

import pytest

from corpus.ingest import TweetRecord, corpus_from_records
from lexicon.dictionary import load_lexicon

WEEK0 = datetime(2014, 6, 2, 12, 0, tzinfo=timezone.utc)   # a Monday


@pytest.fixture(scope="session")
def lex():
    return load_lexicon()


@pytest.fixture
def make_record():
    def _make(tweet_id, text, created_at=WEEK0, lang="ar", user_id="u1"):
        return TweetRecord(id=str(tweet_id), created_at=created_at, user_id=user_id, text=text, lang=lang)
    return _make


@pytest.fixture
def make_corpus(make_record):
    def _make(texts, created_at=WEEK0):
        return corpus_from_records(make_record(i, t, created_at) for i, t in enumerate(texts))
    return _make


@pytest.fixture
def write_jsonl(tmp_path):
    def _write(rows, name="tweets.jsonl"):
        path = tmp_path / name
        with open(path, "w", encoding="utf-8") as f:
            for row in rows:
                f.write(row if isinstance(row, str) else json.dumps(row, ensure_ascii=False))
                f.write("\n")
        return path
    return _write
