from __future__ import annotations

import pytest

from dangerlex.corpus import (
    Corpus,
    CorpusFormat,
    DangerType,
    GoldPolicy,
    UnitLabel,
    binary_gold,
    collapse_labels,
    label_statistics,
    load_corpus,
    resolve_gold,
    write_corpus,
)
from dangerlex.errors import CorpusFormatError, UnknownLabelError
from dangerlex.published import ANNOTATED_PARAGRAPHS, LABEL_COUNTS

from tests.helpers import label, record, write_jsonl


def _two_docs(tmp_path):
    records = [record("b", i, f"Text {i} aus b.", a1=label()) for i in range(3)]
    records += [record("a", i, f"Text {i} aus a.", a1=label("Natural")) for i in (2, 0, 1)]
    return write_jsonl(tmp_path / "c.jsonl", records)


def test_load_jsonl_orders_by_doc_then_unit(tmp_path):
    corpus = load_corpus(_two_docs(tmp_path))
    assert corpus.unit_count == 6
    assert [u.key for u in corpus.units()] == [("a", 0), ("a", 1), ("a", 2), ("b", 0), ("b", 1), ("b", 2)]
    assert corpus.document("a").raw_text == "Text 0 aus a.\n\nText 1 aus a.\n\nText 2 aus a."


def test_unknown_label_names_the_record(fixtures_dir):
    with pytest.raises(UnknownLabelError) as info:
        load_corpus(fixtures_dir / "bad_label.jsonl")
    message = str(info.value)
    assert "bad_label.jsonl:1" in message
    assert "d1/0" in message
    assert "Duell" in message


def test_duplicate_unit_id_is_rejected(tmp_path):
    path = write_jsonl(tmp_path / "dup.jsonl", [record("d", 0, "eins"), record("d", 0, "zwei")])
    with pytest.raises(CorpusFormatError, match="duplicate unit_id 0"):
        load_corpus(path)


def test_gap_in_unit_ids_is_rejected(tmp_path):
    path = write_jsonl(tmp_path / "gap.jsonl", [record("d", 0, "eins"), record("d", 2, "zwei")])
    with pytest.raises(CorpusFormatError, match="not contiguous"):
        load_corpus(path)


def test_malformed_line_reports_line_number(tmp_path):
    path = tmp_path / "broken.jsonl"
    path.write_text('{"doc_id": "d", "unit_id": 0, "text": "ok"}\n{"doc_id": "d", "unit_id": 1}\n', encoding="utf-8")
    with pytest.raises(CorpusFormatError, match=r"broken.jsonl:2"):
        load_corpus(path)


def test_blank_text_is_malformed(tmp_path):
    path = write_jsonl(tmp_path / "blank.jsonl", [record("d", 0, "   ")])
    with pytest.raises(CorpusFormatError):
        load_corpus(path)


def test_raw_text_dir_loads_unannotated_documents(fixtures_dir):
    corpus = load_corpus(fixtures_dir / "raw", CorpusFormat.RAW_TEXT_DIR)
    assert [d.doc_id for d in corpus.documents] == ["brief", "gewitter"]
    assert all(not u.gold for u in corpus.units())


def test_prefixed_type_names_are_aliases():
    assert DangerType.parse("DangerousSituationNatural") is DangerType.NATURAL
    assert DangerType.parse("Hitchcock") is DangerType.HITCHCOCK
    with pytest.raises(UnknownLabelError):
        DangerType.parse("Storm")


@pytest.mark.parametrize(
    "types, fear, expected",
    [
        ({DangerType.NATURAL}, False, (True, False)),
        (set(), True, (False, True)),
        ({DangerType.DUEL, DangerType.AMBUSH}, True, (True, True)),
    ],
)
def test_collapse_labels(types, fear, expected):
    assert collapse_labels(UnitLabel(frozenset(types), fear)) == expected


def test_resolution_policies(tmp_path):
    path = write_jsonl(
        tmp_path / "two.jsonl",
        [record("d", 0, "Text.", a1=label("Duel"), a2=label("Duel", "Ambush", fear=True))],
    )
    unit = next(load_corpus(path).units())
    assert resolve_gold(unit, GoldPolicy.FIRST_ANNOTATOR).danger_types == {DangerType.DUEL}
    assert resolve_gold(unit, GoldPolicy.UNION) == UnitLabel(frozenset({DangerType.DUEL, DangerType.AMBUSH}), True)
    assert resolve_gold(unit, GoldPolicy.INTERSECTION) == UnitLabel(frozenset({DangerType.DUEL}), False)


def test_binary_gold_skips_unannotated(tmp_path):
    path = write_jsonl(tmp_path / "mix.jsonl", [record("d", 0, "a", a1=label("Other")), record("d", 1, "b")])
    assert binary_gold(load_corpus(path), "danger") == {("d", 0): True}


def test_label_statistics_on_fixture(fixture_corpus):
    stats = label_statistics(fixture_corpus)
    assert stats["AnyDangerousSituation"] == 6
    assert stats["FearDescription"] == 3
    assert stats["DangerousSituationOther"] == 2
    assert stats["DangerousSituationHitchcock"] == 0


def test_published_label_table_uses_the_reported_label_names():
    names = label_statistics(Corpus())
    assert set(LABEL_COUNTS) <= set(names)
    assert all(count == 0 for count in names.values())
    assert all(0 < count <= ANNOTATED_PARAGRAPHS for count in LABEL_COUNTS.values())


def test_written_corpus_loads_back_identically(tmp_path, fixture_corpus):
    path = write_corpus(fixture_corpus, tmp_path / "out.jsonl")
    assert load_corpus(path) == fixture_corpus
