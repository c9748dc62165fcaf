import pytest
from hypothesis import given, strategies as st

from viquery.lexicon import (
    BookValue,
    Category,
    LexiconError,
    TimeValue,
    load_lexicon,
    normalize,
    scan_constituent,
    tokenize,
)

S1 = "tác giả a có viết sách b vào năm 2008 không ?"


def test_normalize_s1():
    assert normalize("Tác giả A có viết sách B vào năm 2008 không?") == S1


def test_normalize_empty():
    assert normalize("") == ""


def test_normalize_collapses_whitespace():
    assert (normalize("  Ai   đã viết cuốn sách B vào năm 2000?")
            == "ai đã viết cuốn sách b vào năm 2000 ?")


def test_normalize_separates_commas():
    assert (normalize("Trong năm 2009, tác giả A có viết sách B không?")
            == "trong năm 2009 , tác giả a có viết sách b không ?")


@given(st.text(max_size=80))
def test_normalize_idempotent(text):
    once = normalize(text)
    assert normalize(once) == once


def test_load_entry_fields():
    lex = load_lexicon("vperfect\tđã\tđã\n")
    entry = lex.lookup(Category.VPERFECT, "đã")
    assert entry is not None and entry.canonical == "đã"


def test_load_canonicalizes_verb_variants():
    lex = load_lexicon("verb_publish\tphát hành\txuất bản\n")
    assert lex.lookup(Category.VERB_PUBLISH, "phát hành").canonical == "xuất bản"


def test_load_rejects_unknown_category():
    with pytest.raises(LexiconError, match="bogus_cat"):
        load_lexicon("bogus_cat\tx\tx\n")


def test_load_rejects_wrong_field_count():
    with pytest.raises(LexiconError, match="line 2"):
        load_lexicon("vperfect\tđã\tđã\nvperfect\tđã\n")


def test_load_rejects_duplicates():
    with pytest.raises(LexiconError, match="duplicate"):
        load_lexicon("vperfect\tđã\tđã\nvperfect\tđã\tđã\n")


def test_tokenize_s1_categories(lexicon):
    stream = tokenize(S1, lexicon)
    spans = [(g.surface, {t.category for t in g.tokens}) for g in stream.groups]
    assert spans[0][0] == "tác giả" and Category.CREATOR in spans[0][1]
    assert spans[1][0] == "a" and Category.NAME_AUTHOR in spans[1][1]
    assert spans[2][0] == "có" and Category.INTERROGATIVE1 in spans[2][1]
    assert spans[3][0] == "viết" and spans[3][1] == {Category.VERB_WRITE}
    assert spans[4][0] == "sách" and Category.BOOK_TYPE in spans[4][1]
    assert spans[5][0] == "b" and Category.NAME_BOOK in spans[5][1]
    assert spans[6][0] == "vào" and spans[6][1] == {Category.PREP_TIME}
    assert spans[7][0] == "năm" and spans[7][1] == {Category.NOUN_TIME}
    assert spans[8][0] == "2008" and Category.YEAR in spans[8][1]
    assert spans[9][0] == "không" and spans[9][1] == {Category.INTERROGATIVE2}
    assert spans[10][0] == "?" and spans[10][1] == {Category.PUNCT}


def test_tokenize_single_terminal(lexicon):
    stream = tokenize("?", lexicon)
    assert len(stream.groups) == 1
    assert stream.groups[0].tokens[0].category is Category.PUNCT


def test_tokenize_longest_match_wins(lexicon):
    stream = tokenize("nhà xuất bản nào đã xuất bản sách b trong năm 2009 ?", lexicon)
    first = stream.groups[0]
    assert first.surface == "nhà xuất bản nào"
    assert {t.category for t in first.tokens} == {Category.WHAT_PUBLISHER}


def test_tokenize_category_tie_emits_both(lexicon):
    stream = tokenize("có", lexicon)
    cats = {t.category for t in stream.groups[0].tokens}
    assert cats == {Category.INTERROGATIVE1, Category.VERB_HAVE}


def test_tokenize_partition(lexicon, corpus):
    for _, sentence in corpus[:60]:
        stream = tokenize(sentence, lexicon)
        assert " ".join(g.surface for g in stream.groups) == sentence
        offsets = [(g.start, g.end) for g in stream.groups]
        assert all(a[1] == b[0] for a, b in zip(offsets, offsets[1:]))


def test_tokenize_unknown_run_becomes_name_candidates(lexicon):
    stream = tokenize("xyzzy plugh ?", lexicon)
    run = stream.groups[0]
    assert run.surface == "xyzzy plugh"
    assert {t.category for t in run.tokens} == set(
        {Category.NAME_AUTHOR, Category.NAME_BOOK, Category.NAME_PUBLISHER,
         Category.NAME_SUBJECT, Category.NAME_FIELD, Category.NAME_PLACE})


def test_tokenize_year_candidate(lexicon):
    stream = tokenize("1984", lexicon)
    cats = {t.category for t in stream.groups[0].tokens}
    assert Category.YEAR in cats and Category.NAME_BOOK in cats


def test_scan_author_at_start(lexicon):
    stream = tokenize(S1, lexicon)
    value, after = scan_constituent(stream, 0, Category.AUTHOR, lexicon)
    assert value == "A" and after == 2


def test_scan_time_phrase(lexicon):
    stream = tokenize(S1, lexicon)
    value, after = scan_constituent(stream, 6, Category.TIME_PHRASE, lexicon)
    assert value == TimeValue("vào", 2008) and after == 9


def test_scan_publisher_absent(lexicon):
    stream = tokenize(S1, lexicon)
    assert scan_constituent(stream, 0, Category.PUBLISHER, lexicon) is None


def test_scan_book_bound(lexicon):
    stream = tokenize(S1, lexicon)
    value, after = scan_constituent(stream, 4, Category.BOOK, lexicon)
    assert value == BookValue(title="B") and after == 6


def test_scan_book_unbound_with_qualifier(lexicon):
    stream = tokenize("sách nào thuộc chủ đề t", lexicon)
    value, after = scan_constituent(stream, 0, Category.BOOK, lexicon)
    assert value == BookValue(subject="T")
    assert after == len(stream.groups)


def test_scan_consumes_at_least_one_token(lexicon, corpus):
    for _, sentence in corpus[:40]:
        stream = tokenize(sentence, lexicon)
        for at in range(len(stream.groups)):
            for category in (Category.AUTHOR, Category.BOOK, Category.TIME_PHRASE,
                             Category.SUBJECT, Category.PUBLISHER):
                found = scan_constituent(stream, at, category, lexicon)
                if found is not None:
                    assert found[1] > at
