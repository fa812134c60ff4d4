import pytest

from corpus.ingest import corpus_from_records
from lexicon.mining import top_stems


def test_single_tweet_hand_count(make_corpus, lex):
    # جهاد reduces to جهد
    table = top_stems(make_corpus(["قتل قتل جهاد"]), 2, lex)
    assert table.entries == (("قتل", 2), ("جهد", 1))
    assert table.total_tokens == 3


def test_stop_words_removed_before_stemming(make_corpus, lex):
    table = top_stems(make_corpus(["في الحرب من الحرب"]), 10, lex)
    assert table.as_dict() == {"حرب": 2}


def test_empty_corpus_gives_empty_table(lex):
    table = top_stems(corpus_from_records([]), 1, lex)
    assert len(table) == 0
    assert table.total_tokens == 0


def test_k_below_one_rejected(make_corpus, lex):
    with pytest.raises(ValueError):
        top_stems(make_corpus(["قتل"]), 0, lex)


def test_ties_in_codepoint_order(make_corpus, lex):
    table = top_stems(make_corpus(["شمس بحر قتل"]), 3, lex)
    assert table.stems() == sorted(["شمس", "بحر", "قتل"])


def test_prefix_property(make_corpus, lex):
    corpus = make_corpus(["قتل الحرب الحرب", "دين شمس قتل", "بحر قتل الكفار"])
    full = top_stems(corpus, 10, lex)
    for k in range(1, len(full) + 1):
        assert top_stems(corpus, k, lex).entries == full.entries[:k]


def test_counts_bounded_by_tokens(make_corpus, lex):
    table = top_stems(make_corpus(["قتل في الحرب", "الخلافة الخلافة دين"]), 100, lex)
    assert all(n > 0 for _, n in table.entries)
    assert sum(n for _, n in table.entries) <= table.total_tokens


def test_default_lexicon_used(make_corpus):
    assert top_stems(make_corpus(["في قتل"]), 5).as_dict() == {"قتل": 1}
