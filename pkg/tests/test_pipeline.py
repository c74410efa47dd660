from __future__ import annotations

import json

import pytest

from dangerlex.config import load_pipeline_config
from dangerlex.errors import StageError
from dangerlex.fixtures import fixture_manifest, planted_units, write_fixtures
from dangerlex.pipeline import run_pipeline, write_segmented
from dangerlex.corpus import load_corpus, CorpusFormat
from dangerlex.segmentation import SegmenterConfig, segment_corpus


@pytest.fixture(scope="module")
def fixture_run(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixtures")
    config = load_pipeline_config(write_fixtures(root))
    return config, run_pipeline(config)


def test_run_writes_every_report(fixture_run):
    config, result = fixture_run
    out = config.output_dir
    for name in ("summary.md", "results.tsv", "agreement.tsv", "label_counts.tsv", "wordlists.tsv"):
        assert (out / name).exists()
    for provenance in ("base", "embedding", "conceptnet"):
        for task in ("danger", "fear"):
            assert (out / "predictions" / f"{task}.{provenance}.tsv").exists()
            assert (out / "errors" / f"{task}.{provenance}.fp.tsv").exists()
    assert all(path.exists() for path in result.files)


def test_word_list_artifacts_carry_the_provenance_header(fixture_run):
    config, result = fixture_run
    lists = sorted((config.output_dir / "wordlists").glob("*.txt"))
    assert {p.name.split(".")[1] for p in lists} == {"base", "embedding", "conceptnet"}
    for path in lists:
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("# tool: dangerlex ")
        assert lines[1] == f"# config: {result.config_hash}"
        assert path in result.files


def test_base_lists_find_every_planted_unit(fixture_run):
    _, result = fixture_run
    danger = result.predictions[("danger", "base")]
    assert set(planted_units()) <= set(danger.positives())
    assert danger.threshold == pytest.approx(fixture_manifest()["danger_mean"])
    fear = result.predictions[("fear", "base")]
    assert {(u["doc_id"], u["unit_id"]) for u in fixture_manifest()["fear_units"]} == set(fear.positives())


def test_reports_cover_both_tasks_and_three_list_sources(fixture_run):
    _, result = fixture_run
    assert sorted((r.task, r.provenance) for r in result.reports) == sorted(
        (task, prov) for task in ("danger", "fear") for prov in ("base", "conceptnet", "embedding")
    )
    base = next(r for r in result.reports if (r.task, r.provenance) == ("danger", "base"))
    assert (base.precision, base.recall) == (85.7, 100.0)
    assert [a.scheme.value for a in result.agreement] == ["typed", "any-danger", "fear"]


def test_summary_mentions_the_results(fixture_run):
    config, result = fixture_run
    summary = (config.output_dir / "summary.md").read_text(encoding="utf-8")
    assert f"config: {result.config_hash}" in summary
    assert "85.7" in summary


def test_rerun_into_another_directory_is_byte_identical(fixture_run, tmp_path):
    config, first = fixture_run
    second = run_pipeline(config.with_overrides({"output_dir": tmp_path / "again"}))
    assert second.config_hash == first.config_hash
    for path in first.files:
        relative = path.relative_to(first.output_dir)
        assert (second.output_dir / relative).read_bytes() == path.read_bytes(), relative


def test_missing_lemma_table_fails_in_the_config_stage(tmp_path):
    config = load_pipeline_config(write_fixtures(tmp_path)).with_overrides({"lemma_table": tmp_path / "weg.tsv"})
    with pytest.raises(StageError) as info:
        run_pipeline(config)
    assert info.value.stage == "config"
    assert info.value.exit_code == 1
    assert "weg.tsv" in str(info.value)


def test_raw_text_runs_segment_first_without_evaluation(tmp_path, fixtures_dir):
    config = load_pipeline_config(write_fixtures(tmp_path)).with_overrides(
        {"corpus_path": fixtures_dir / "raw", "corpus_format": CorpusFormat.RAW_TEXT_DIR.value}
    )
    result = run_pipeline(config)
    assert result.reports == []
    assert (result.output_dir / "corpus.segmented.jsonl").exists()
    assert (result.output_dir / "predictions" / "danger.base.tsv").exists()
    assert not (result.output_dir / "agreement.tsv").exists()


def test_segmented_corpus_has_a_sidecar(tmp_path, fixtures_dir):
    config = SegmenterConfig()
    corpus = segment_corpus(load_corpus(fixtures_dir / "raw", "raw-text-dir"), config)
    written, sidecar = write_segmented(corpus, tmp_path / "seg.jsonl", config, {"config": "abc"})
    meta = json.loads(sidecar.read_text(encoding="utf-8"))
    assert sidecar.name == "seg.jsonl.meta.json"
    assert meta["segmentation_scope"] == "document"
    assert meta["units"] == corpus.unit_count
    assert load_corpus(written) == corpus
