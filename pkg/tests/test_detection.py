from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from dangerlex.corpus import Corpus, Document, ParagraphUnit
from dangerlex.detection import (
    Decision,
    ThresholdScope,
    UnitScore,
    classify,
    detect,
    prediction_header,
    predictions_frame,
    read_predictions,
    score_units,
)
from dangerlex.errors import DetectionError
from dangerlex.lexicon import DANGER_LIST, FEAR_LIST, LemmaTable, Provenance, WordList, detection_lists
from dangerlex.reporting import write_tsv
from dangerlex.resources import DEFAULT_WORDLIST_DIR

VOCABULARY = ["sturm", "wind", "haus", "brot", "klinge", "garten", "feuer", "tisch"]


def _corpus(docs) -> Corpus:
    documents = []
    for doc_id, texts in docs:
        units = tuple(ParagraphUnit(doc_id, i, text) for i, text in enumerate(texts))
        documents.append(Document(doc_id, doc_id, "\n\n".join(texts), units))
    return Corpus(tuple(documents))


def _scores(counts, doc_id="d", list_name="Danger"):
    return [UnitScore(doc_id, i, list_name, c) for i, c in enumerate(counts)]


def _positive_ids(prediction):
    return [unit_id for _, unit_id in prediction.positives()]


def _random_docs(rng):
    docs = []
    for d in range(int(rng.integers(1, 4))):
        texts = [
            " ".join(VOCABULARY[i] for i in rng.integers(0, len(VOCABULARY), size=int(rng.integers(1, 12))))
            for _ in range(int(rng.integers(1, 6)))
        ]
        docs.append((f"doc{d}", texts))
    return docs


def test_unit_counts_occurrences_or_types():
    corpus = _corpus([("d", ["Der Sturm, der Sturm!"])])
    storm = WordList("Storm", Provenance.BASE, frozenset({"sturm"}))
    (tokens,) = score_units(corpus, storm, LemmaTable())
    (types,) = score_units(corpus, storm, LemmaTable(), types_only=True)
    assert tokens.count == 2
    assert tokens.matched_words == Counter({"sturm": 2})
    assert types.count == 1


@pytest.mark.parametrize(
    "counts, positives",
    [
        ([0, 0, 3], [2]),
        ([2, 2, 2], []),
        ([1, 2, 3, 4], [2, 3]),
    ],
)
def test_strictly_above_the_mean(counts, positives):
    prediction = classify(_scores(counts))
    assert prediction.threshold == pytest.approx(sum(counts) / len(counts))
    assert _positive_ids(prediction) == positives


def test_empty_input_is_an_error():
    with pytest.raises(DetectionError):
        classify([])


def test_scores_from_different_lists_are_not_mixed():
    with pytest.raises(DetectionError, match="mixed"):
        classify(_scores([1]) + _scores([2], doc_id="e", list_name="Fear"))


def test_random_corpora_match_a_direct_count():
    rng = np.random.default_rng(11)
    for _ in range(500):
        wordlist = frozenset(w for w in VOCABULARY if rng.random() < 0.4)
        docs = _random_docs(rng)
        prediction = detect(_corpus(docs), WordList("Danger", Provenance.BASE, wordlist), LemmaTable())

        counts = {(doc_id, i): sum(w in wordlist for w in text.split()) for doc_id, texts in docs for i, text in enumerate(texts)}
        total, n = sum(counts.values()), len(counts)
        expected = {key for key, c in counts.items() if c * n > total}
        assert set(prediction.positives()) == expected
        assert {s.key: s.count for s in prediction.scores} == counts


def test_adding_a_word_never_lowers_a_count():
    rng = np.random.default_rng(13)
    for _ in range(200):
        corpus = _corpus(_random_docs(rng))
        words = {w for w in VOCABULARY if rng.random() < 0.4}
        extra = VOCABULARY[int(rng.integers(0, len(VOCABULARY)))]
        for types_only in (False, True):
            before = score_units(corpus, WordList("Danger", Provenance.BASE, frozenset(words)), LemmaTable(), types_only)
            after = score_units(
                corpus, WordList("Danger", Provenance.BASE, frozenset(words | {extra})), LemmaTable(), types_only
            )
            assert all(a.count >= b.count for a, b in zip(after, before))


@pytest.mark.parametrize("scope", ["global", "per-doc"])
def test_lowest_count_unit_is_never_positive(scope):
    rng = np.random.default_rng(17)
    for _ in range(300):
        scores = []
        for d in range(int(rng.integers(1, 4))):
            counts = rng.integers(0, 6, size=int(rng.integers(1, 8)))
            scores += _scores([int(c) for c in counts], doc_id=f"doc{d}")
        prediction = classify(scores, scope)
        pool = scores if scope == "global" else [s for s in scores if s.doc_id == scores[0].doc_id]
        lowest = min(pool, key=lambda s: s.count)
        assert prediction.decisions[lowest.key] is Decision.NEGATIVE


def test_duplicating_the_corpus_keeps_every_decision():
    docs = [("a", ["sturm wind haus", "brot", "klinge klinge feuer"]), ("b", ["garten", "sturm"])]
    wordlist = WordList("Danger", Provenance.BASE, frozenset({"sturm", "wind", "klinge", "feuer"}))
    once = detect(_corpus(docs), wordlist, LemmaTable())
    twice = detect(_corpus(docs + [(f"{d}_copy", t) for d, t in docs]), wordlist, LemmaTable())
    assert twice.threshold == pytest.approx(once.threshold)
    for key, decision in once.decisions.items():
        assert twice.decisions[key] is decision
        assert twice.decisions[(f"{key[0]}_copy", key[1])] is decision


def test_per_document_threshold():
    scores = _scores([0, 4], doc_id="a") + _scores([10, 12], doc_id="b")
    global_ = classify(scores)
    per_doc = classify(scores, "per-doc")
    assert global_.positives() == [("b", 0), ("b", 1)]
    assert per_doc.scope is ThresholdScope.PER_DOCUMENT
    assert per_doc.doc_thresholds == {"a": 2.0, "b": 11.0}
    assert per_doc.positives() == [("a", 1), ("b", 1)]
    assert per_doc.threshold_for("a") == 2.0


def test_fixture_danger_and_fear_detection(fixture_corpus, lemmas):
    targets = detection_lists(DEFAULT_WORDLIST_DIR)
    danger = detect(fixture_corpus, targets[DANGER_LIST], lemmas)
    assert danger.threshold == pytest.approx(1.85)
    assert sorted(danger.positives()) == [
        ("am_hafen", 1),
        ("am_hafen", 4),
        ("die_erbschaft", 1),
        ("die_erbschaft", 3),
        ("die_erbschaft", 5),
        ("sturmnacht", 1),
        ("sturmnacht", 3),
    ]
    fear = detect(fixture_corpus, targets[FEAR_LIST], lemmas)
    assert fear.threshold == pytest.approx(0.3)
    assert sorted(fear.positives()) == [("am_hafen", 4), ("die_erbschaft", 6), ("sturmnacht", 1)]


def test_restrict_keeps_decisions_of_the_chosen_documents():
    prediction = classify(_scores([0, 4], doc_id="a") + _scores([10, 12], doc_id="b"), "per-doc")
    only_a = prediction.restrict(["a"])
    assert [s.key for s in only_a.scores] == [("a", 0), ("a", 1)]
    assert only_a.doc_thresholds == {"a": 2.0}
    assert only_a.decisions[("a", 1)] is Decision.POSITIVE


def test_prediction_file_reads_back(tmp_path):
    docs = [("a", ["sturm sturm wind", "haus"]), ("b", ["klinge", "brot tisch"])]
    wordlist = WordList("Danger", Provenance.EMBEDDING, frozenset({"sturm", "wind", "klinge"}))
    prediction = detect(_corpus(docs), wordlist, LemmaTable(), scope="per-doc")
    path = write_tsv(tmp_path / "danger.embedding.tsv", predictions_frame(prediction), prediction_header(prediction))

    loaded = read_predictions(path)
    assert loaded.list_name == "Danger"
    assert loaded.provenance == "embedding"
    assert loaded.scope is ThresholdScope.PER_DOCUMENT
    assert loaded.decisions == prediction.decisions
    assert [(s.key, s.count, s.matched_words) for s in loaded.scores] == [
        (s.key, s.count, s.matched_words) for s in prediction.scores
    ]
    assert loaded.doc_thresholds == pytest.approx(prediction.doc_thresholds)
    assert predictions_frame(prediction).loc[0, "matched_words"] == "sturm;sturm;wind"


def test_unreadable_prediction_file(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("doc_id\tunit_id\n", encoding="utf-8")
    with pytest.raises(DetectionError, match="lacks columns"):
        read_predictions(path)
