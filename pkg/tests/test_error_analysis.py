from __future__ import annotations

from collections import Counter

import pytest

from dangerlex.corpus import binary_gold
from dangerlex.detection import UnitScore, classify, detect
from dangerlex.error_analysis import (
    RANK_COLUMNS,
    RankKey,
    WordErrorStat,
    attribute_errors,
    false_negative_frame,
    false_negatives,
    rank_report,
)
from dangerlex.lexicon import DANGER_LIST, WordList, detection_lists
from dangerlex.published import DANGER_WORDS, FEAR_WORDS, TOP_FALSE_POSITIVES, TOP_TRUE_POSITIVES
from dangerlex.resources import DEFAULT_WORDLIST_DIR


def _score(unit_id, *words, doc_id="d"):
    matched = Counter(words)
    return UnitScore(doc_id, unit_id, "Danger", sum(matched.values()), matched)


@pytest.mark.parametrize("word, tp, fp, ratio", DANGER_WORDS + FEAR_WORDS)
def test_published_word_ratios(word, tp, fp, ratio):
    assert WordErrorStat(word, tp, fp).ratio_text() == f"{ratio:.2f}"


def test_published_ranking_heads():
    stats = [WordErrorStat(word.lower(), tp, fp) for word, tp, fp, _ in DANGER_WORDS]
    by_fp = rank_report(stats, RankKey.FP, top_n=len(TOP_FALSE_POSITIVES))
    assert list(zip(by_fp["word"], by_fp["fp"])) == [(w.lower(), n) for w, n in TOP_FALSE_POSITIVES]
    by_tp = rank_report(stats, "tp", top_n=1)
    assert list(zip(by_tp["word"], by_tp["tp"])) == [(w.lower(), n) for w, n in TOP_TRUE_POSITIVES]


def test_words_count_once_per_unit():
    prediction = classify([_score(0, "messer", "messer", "blut"), _score(1, "blut", "blut", "blut"), _score(2)])
    gold = {("d", 0): True, ("d", 1): False, ("d", 2): False}
    stats = {s.word: s for s in attribute_errors(prediction, gold)}
    assert stats["messer"] == WordErrorStat("messer", 1, 0)
    assert stats["blut"] == WordErrorStat("blut", 1, 1)


def test_attribution_only_sees_its_own_units():
    prediction = classify([_score(0, "sturm", "sturm"), _score(1, "sturm", "sturm", doc_id="e"), _score(2)])
    only_d = attribute_errors(prediction.restrict(["d"]), {("d", 0): False, ("d", 2): False})
    assert only_d == [WordErrorStat("sturm", 0, 1)]


def test_unseen_list_words_have_no_ratio():
    prediction = classify([_score(0, "sturm", "sturm"), _score(1)])
    wordlist = WordList("Storm", "base", frozenset({"sturm", "hagel"}))
    stats = attribute_errors(prediction, {("d", 0): True, ("d", 1): False}, wordlist)
    hagel = next(s for s in stats if s.word == "hagel")
    assert hagel.tp_ratio is None
    assert hagel.ratio_text() == "—"
    table = rank_report(stats, "ratio")
    assert list(table["word"]) == ["sturm"]


def test_empty_report_keeps_its_columns():
    table = rank_report([], "fp")
    assert table.empty
    assert list(table.columns) == RANK_COLUMNS


def test_fixture_error_report(fixture_corpus, lemmas):
    prediction = detect(fixture_corpus, detection_lists(DEFAULT_WORDLIST_DIR)[DANGER_LIST], lemmas)
    gold = binary_gold(fixture_corpus, "danger")
    stats = attribute_errors(prediction, gold)
    assert sum(s.fp_units for s in stats) > 0
    assert all(s.tp_units + s.fp_units >= 1 for s in stats)
    assert false_negatives(prediction, gold, fixture_corpus) == []


def test_false_negatives_list_missed_units():
    prediction = classify([_score(0, "sturm", "sturm", "sturm"), _score(1), _score(2)])
    gold = {("d", 0): True, ("d", 1): True, ("d", 2): False}
    (missed,) = false_negatives(prediction, gold)
    assert (missed.doc_id, missed.unit_id, missed.count) == ("d", 1, 0)
    assert missed.threshold == pytest.approx(1.0)
    frame = false_negative_frame([missed])
    assert frame.loc[0, "threshold"] == "1.0000"
