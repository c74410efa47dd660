from __future__ import annotations

import hashlib
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from .command_registry import COMMANDS
from .config import PipelineConfig, Settings, load_pipeline_config
from .corpus import CorpusFormat, GoldPolicy, binary_gold, load_corpus
from .detection import detect, prediction_header, predictions_frame, read_predictions
from .error_analysis import RankKey, attribute_errors, false_negative_frame, false_negatives, rank_report
from .errors import UsageError, WordListError
from .evaluation import AgreementScheme, agreement_suite, evaluate
from .expansion import KgClient, expand_directory, expand_list, load_vectors
from .fixtures import write_fixtures
from .lexicon import (
    DANGER_LIST,
    FEAR_LIST,
    LemmaTable,
    Provenance,
    WordList,
    load_lemma_table,
    load_wordlist,
    merge_danger_lists,
    write_wordlist,
)
from .pipeline import run_pipeline, write_segmented
from .reporting import aligned_text, eval_frame, provenance_header, write_tsv
from .resources import DEFAULT_LEMMA_TABLE
from .segmentation import CutoffPolicy, SegmenterConfig, load_stopwords, segment_corpus

logger = logging.getLogger(__name__)

_RUN_OVERRIDES = (
    "corpus_path",
    "corpus_format",
    "wordlist_dir",
    "lemma_table",
    "stopwords",
    "vectors_path",
    "kg_dump",
    "kg_api_url",
    "kg_cache_dir",
    "kg_cache_only",
    "segment_w",
    "segment_k",
    "segment_smoothing_width",
    "segment_smoothing_rounds",
    "segment_cutoff",
    "expansion_k",
    "detection_scope",
    "types_only",
    "gold_policy",
    "top_n",
    "output_dir",
    "jobs",
)


def _require(arguments: Dict[str, Any], key: str) -> str:
    value = str(arguments.get(key) or "").strip()
    if not value:
        raise UsageError(f"--{key.replace('_', '-')} is required")
    return value


def _existing(arguments: Dict[str, Any], key: str) -> Path:
    path = Path(_require(arguments, key))
    if not path.exists():
        raise UsageError(f"--{key.replace('_', '-')}: no such file or directory: {path}")
    return path


def _int(arguments: Dict[str, Any], key: str, default: int) -> int:
    value = arguments.get(key)
    return default if value is None else int(value)


def _positive(arguments: Dict[str, Any], key: str, default: int) -> int:
    value = _int(arguments, key, default)
    if value < 1:
        raise UsageError(f"--{key.replace('_', '-')} must be >= 1")
    return value


def _args_hash(name: str, arguments: Dict[str, Any]) -> str:
    canonical = json.dumps({"command": name, **arguments}, sort_keys=True, default=str, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def _lemmas(arguments: Dict[str, Any]) -> LemmaTable:
    path = arguments.get("lemmas") or DEFAULT_LEMMA_TABLE
    if not Path(path).exists():
        raise UsageError(f"--lemmas: no such file: {path}")
    return load_lemma_table(path)


def _detection_list(paths: List[str]) -> WordList:
    lists = []
    for raw in paths:
        path = Path(raw)
        if not path.exists():
            raise UsageError(f"--list: no such file: {path}")
        lists.append(load_wordlist(path))
    if len(lists) == 1:
        return lists[0]
    if any(wl.name == FEAR_LIST for wl in lists):
        raise WordListError("the Fear list is detected on its own; do not merge it with danger sublists")
    return merge_danger_lists(lists, DANGER_LIST)


def _emit(frame, out: Optional[str], header: Dict[str, str], index: bool = False) -> None:
    print(aligned_text(frame, index=index))
    if out:
        write_tsv(out, frame, header, index=index)
        logger.info("wrote %s", out)


def _run_config(arguments: Dict[str, Any]) -> PipelineConfig:
    config = load_pipeline_config(arguments["config"]) if arguments.get("config") else PipelineConfig()
    overrides = {key: arguments.get(key) for key in _RUN_OVERRIDES}
    # store_true flags arrive as False when absent
    for key in ("kg_cache_only", "types_only"):
        if overrides[key] is False:
            overrides[key] = None
    return config.with_overrides(overrides)


def dispatch_command(settings: Settings, name: str, arguments: Dict[str, Any]) -> Any:
    command_names = {c.name for c in COMMANDS}
    if name not in command_names:
        raise UsageError(f"Unknown command: {name}")
    header = provenance_header(_args_hash(name, arguments))

    if name == "segment":
        source = _existing(arguments, "input")
        out = Path(_require(arguments, "out"))
        stopwords = load_stopwords(arguments["stopwords"]) if arguments.get("stopwords") else None
        try:
            config = SegmenterConfig(
                pseudosentence_size=_int(arguments, "w", 20),
                block_size=_int(arguments, "k", 10),
                smoothing_width=_int(arguments, "smoothing_width", 2),
                smoothing_rounds=_int(arguments, "smoothing_rounds", 1),
                cutoff_policy=CutoffPolicy.parse(arguments.get("cutoff") or "hc"),
                **({"stopwords": stopwords} if stopwords is not None else {}),
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        corpus = load_corpus(source, CorpusFormat.parse(arguments.get("format") or "raw-text-dir"))
        segmented = segment_corpus(corpus, config, jobs=_positive(arguments, "jobs", 1))
        written, _ = write_segmented(segmented, out, config, header)
        print(f"{segmented.unit_count} units from {len(segmented.documents)} documents -> {written}")
        return written

    if name == "expand":
        base = _existing(arguments, "base")
        out = Path(_require(arguments, "out"))
        method = _require(arguments, "method")
        k = _positive(arguments, "k", 50)
        store = load_vectors(_existing(arguments, "vectors")) if arguments.get("vectors") else None
        client = None
        if any(arguments.get(key) for key in ("dump", "api", "cache_dir")):
            client = KgClient(
                settings,
                dump=arguments.get("dump"),
                api_url=arguments.get("api"),
                cache_dir=arguments.get("cache_dir"),
                cache_only=bool(arguments.get("cache_only")),
            )
        progress = sys.stderr.isatty()
        if base.is_dir():
            expanded = expand_directory(
                base,
                out,
                method,
                store=store,
                lemmas=_lemmas(arguments),
                client=client,
                k=k,
                progress=progress,
                header=header,
            )
        else:
            wordlist = load_wordlist(base, provenance=Provenance.BASE)
            result = expand_list(wordlist, method, store=store, lemmas=_lemmas(arguments), client=client, k=k, progress=progress)
            out.mkdir(parents=True, exist_ok=True)
            write_wordlist(result, out / result.filename, header)
            expanded = {result.name: result}
        for list_name, wordlist in expanded.items():
            print(f"{list_name}: {len(wordlist)} words ({wordlist.provenance.value})")
        return expanded

    if name == "detect":
        corpus = load_corpus(_existing(arguments, "corpus"), CorpusFormat.parse(arguments.get("format") or "segmented-jsonl"))
        wordlist = _detection_list(list(arguments.get("lists") or []))
        prediction = detect(
            corpus,
            wordlist,
            _lemmas(arguments),
            arguments.get("scope") or "global",
            bool(arguments.get("types_only")),
            jobs=_positive(arguments, "jobs", 1),
        )
        out = Path(_require(arguments, "out"))
        write_tsv(out, predictions_frame(prediction), {**header, **prediction_header(prediction)})
        print(f"{wordlist.name}: {len(prediction.positives())}/{len(prediction.scores)} units positive "
              f"(threshold {prediction.threshold:.3f}) -> {out}")
        return prediction

    if name == "evaluate":
        prediction = read_predictions(_existing(arguments, "pred"))
        corpus = load_corpus(_existing(arguments, "corpus"))
        task = _require(arguments, "task")
        report = evaluate(prediction, corpus, task, GoldPolicy.parse(arguments.get("policy") or "first-annotator"))
        for key, value in report.header().items():
            print(f"# {key}: {value}")
        _emit(eval_frame([report]), arguments.get("out"), {**header, **report.header()})
        return report

    if name == "agreement":
        corpus = load_corpus(_existing(arguments, "corpus"))
        report = agreement_suite(corpus, AgreementScheme.parse(arguments.get("scheme") or "typed"))
        _emit(report.frame(), arguments.get("out"), {**header, "scheme": report.scheme.value})
        print(f"average kappa ({report.scheme.value}): {report.average:.3f} ({report.band})")
        return report

    if name == "error-report":
        prediction = read_predictions(_existing(arguments, "pred"))
        corpus = load_corpus(_existing(arguments, "corpus"))
        task = _require(arguments, "task")
        if task not in {"danger", "fear"}:
            raise UsageError("--task must be danger or fear")
        gold = binary_gold(corpus, task, GoldPolicy.parse(arguments.get("policy") or "first-annotator"))
        top_n = _int(arguments, "top", 10)
        if top_n < 0:
            raise UsageError("--top must be >= 0")
        table = rank_report(attribute_errors(prediction, gold), RankKey.parse(arguments.get("sort") or "fp"), top_n)
        _emit(table, arguments.get("out"), header)
        if arguments.get("false_negatives"):
            missed = false_negative_frame(false_negatives(prediction, gold, corpus))
            write_tsv(arguments["false_negatives"], missed, header)
            print(f"{len(missed)} false negatives -> {arguments['false_negatives']}")
        return table

    if name == "run":
        config = _run_config(arguments)
        result = run_pipeline(config)
        print(aligned_text(eval_frame(result.reports)))
        print(f"{len(result.files)} files written to {result.output_dir} (config {result.config_hash})")
        return result

    if name == "fixtures":
        config_path = write_fixtures(_require(arguments, "out"))
        print(f"fixtures written; run with: python -m dangerlex run --config {config_path}")
        return config_path

    raise UsageError(f"Unhandled command: {name}")
