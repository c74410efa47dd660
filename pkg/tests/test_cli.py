from __future__ import annotations

import pytest

from dangerlex.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, build_parser, main
from dangerlex.command_dispatch import _run_config
from dangerlex.command_registry import COMMANDS, command_names
from dangerlex.detection import read_predictions
from dangerlex.resources import DEFAULT_WORDLIST_DIR, FIXTURE_DIR

CORPUS = str(FIXTURE_DIR / "corpus.jsonl")


def test_registry_and_parser_agree():
    assert command_names() == [c.name for c in COMMANDS]
    assert set(command_names()) == {"segment", "expand", "detect", "evaluate", "agreement", "error-report", "run", "fixtures"}


@pytest.mark.parametrize("name", [c.name for c in COMMANDS])
def test_every_command_has_help(name, capsys):
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args([name, "--help"])
    assert info.value.code == 0
    assert name in capsys.readouterr().out


def test_missing_required_flag_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as info:
        main(["detect", "--corpus", CORPUS])
    assert info.value.code == EXIT_USAGE
    assert "--list" in capsys.readouterr().err


def test_missing_input_file_is_a_usage_error(tmp_path, capsys):
    code = main(["evaluate", "--pred", str(tmp_path / "fehlt.tsv"), "--corpus", CORPUS, "--task", "danger"])
    assert code == EXIT_USAGE
    assert "fehlt.tsv" in capsys.readouterr().err


def test_bad_corpus_is_a_data_error(tmp_path, fixtures_dir, capsys):
    code = main(["agreement", "--corpus", str(fixtures_dir / "bad_label.jsonl")])
    assert code == EXIT_DATA
    assert "Duell" in capsys.readouterr().err


def test_detect_evaluate_and_report(tmp_path, capsys):
    pred = tmp_path / "danger.base.tsv"
    lists = [str(p) for p in sorted(DEFAULT_WORDLIST_DIR.glob("*.base.txt")) if not p.name.startswith("Fear.")]
    argv = ["detect", "--corpus", CORPUS, "--out", str(pred)]
    for path in lists:
        argv += ["--list", path]
    assert main(argv) == EXIT_OK
    assert len(read_predictions(pred).positives()) == 7

    assert main(["evaluate", "--pred", str(pred), "--corpus", CORPUS, "--task", "danger", "--out", str(tmp_path / "eval.tsv")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "85.7" in out
    assert "# gold_policy: first-annotator" in out

    missed = tmp_path / "fn.tsv"
    assert main(
        ["error-report", "--pred", str(pred), "--corpus", CORPUS, "--task", "danger", "--sort", "fp",
         "--top", "3", "--false-negatives", str(missed)]
    ) == EXIT_OK
    assert "0 false negatives" in capsys.readouterr().out
    assert missed.exists()


def test_fear_list_cannot_be_merged(tmp_path):
    code = main(
        ["detect", "--corpus", CORPUS, "--out", str(tmp_path / "p.tsv"),
         "--list", str(DEFAULT_WORDLIST_DIR / "Fear.base.txt"), "--list", str(DEFAULT_WORDLIST_DIR / "Storm.base.txt")]
    )
    assert code == EXIT_DATA


def test_agreement_prints_the_average(capsys):
    assert main(["agreement", "--corpus", CORPUS, "--scheme", "any"]) == EXIT_OK
    assert "average kappa (any-danger)" in capsys.readouterr().out


def test_expand_from_the_dump(tmp_path, capsys):
    out = tmp_path / "lists"
    code = main(
        ["expand", "--base", str(DEFAULT_WORDLIST_DIR), "--method", "kg", "--out", str(out),
         "--dump", str(FIXTURE_DIR / "conceptnet_dump.tsv")]
    )
    assert code == EXIT_OK
    lines = (out / "Fear.conceptnet.txt").read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# tool: dangerlex ")
    assert lines[1].startswith("# config: ")
    assert "furcht" in (out / "Fear.conceptnet.txt").read_text(encoding="utf-8").split()


def test_expand_without_a_source_is_a_usage_error(tmp_path):
    code = main(["expand", "--base", str(DEFAULT_WORDLIST_DIR), "--method", "embeddings", "--out", str(tmp_path)])
    assert code == EXIT_USAGE


def test_segment_raw_texts(tmp_path, fixtures_dir, capsys):
    out = tmp_path / "seg.jsonl"
    assert main(["segment", "--input", str(fixtures_dir / "raw"), "--out", str(out), "--w", "10", "--k", "4"]) == EXIT_OK
    assert out.exists()
    assert (tmp_path / "seg.jsonl.meta.json").exists()


def test_fixtures_then_run(tmp_path, capsys):
    assert main(["fixtures", "--out", str(tmp_path / "fx")]) == EXIT_OK
    config = tmp_path / "fx" / "pipeline.env"
    assert main(["run", "--config", str(config), "--out", str(tmp_path / "run")]) == EXIT_OK
    assert (tmp_path / "run" / "summary.md").exists()


def test_run_with_missing_lemma_table_names_the_path(tmp_path, capsys):
    main(["fixtures", "--out", str(tmp_path / "fx")])
    missing = tmp_path / "fx" / "keine_lemmata.tsv"
    code = main(["run", "--config", str(tmp_path / "fx" / "pipeline.env"), "--lemmas", str(missing)])
    assert code != EXIT_OK
    assert str(missing) in capsys.readouterr().err


def test_run_flags_override_segmenter_and_expansion_keys(tmp_path):
    main(["fixtures", "--out", str(tmp_path / "fx")])
    argv = ["run", "--config", str(tmp_path / "fx" / "pipeline.env"), "--w", "7", "--k", "3"]
    argv += ["--smoothing-width", "1", "--smoothing-rounds", "0", "--expansion-k", "2"]
    config = _run_config(vars(build_parser().parse_args(argv)))
    assert (config.segment_w, config.segment_k) == (7, 3)
    assert (config.segment_smoothing_width, config.segment_smoothing_rounds) == (1, 0)
    assert config.expansion_k == 2


def test_run_rejects_a_zero_pseudosentence_size(tmp_path, capsys):
    main(["fixtures", "--out", str(tmp_path / "fx")])
    capsys.readouterr()
    code = main(["run", "--config", str(tmp_path / "fx" / "pipeline.env"), "--w", "0"])
    assert code == EXIT_USAGE
    assert "SEGMENT_W must be >= 1" in capsys.readouterr().err
