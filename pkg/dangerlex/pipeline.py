"""End-to-end run: segment, expand, detect, evaluate, attribute errors.

Every report file starts with ``# key: value`` provenance lines (tool version
and config hash) and holds nothing run-specific beyond that, so a rerun on
unchanged inputs reproduces each file byte for byte.
"""
from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

import pandas as pd

from .config import PipelineConfig, load_settings
from .corpus import Corpus, CorpusFormat, binary_gold, label_statistics, load_corpus, write_corpus
from .detection import PredictionSet, detect, prediction_header, predictions_frame
from .error_analysis import (
    RankKey,
    attribute_errors,
    false_negative_frame,
    false_negatives,
    rank_report,
)
from .errors import DangerlexError, EvaluationError, StageError
from .evaluation import AgreementReport, AgreementScheme, EvalReport, agreement_suite, evaluate
from .expansion import KgClient, expand_directory, load_vectors
from .lexicon import (
    DANGER_LIST,
    FEAR_LIST,
    Provenance,
    available_provenances,
    detection_lists,
    load_lemma_table,
    load_wordlist_dir,
    wordlist_statistics,
    write_wordlist,
)
from .reporting import eval_frame, provenance_header, render_summary, write_text, write_tsv
from .segmentation import SegmenterConfig, segment_corpus

logger = logging.getLogger(__name__)

TASKS: Tuple[Tuple[str, str], ...] = (("danger", DANGER_LIST), ("fear", FEAR_LIST))


@dataclass
class RunResult:
    output_dir: Path
    config_hash: str
    files: List[Path] = field(default_factory=list)
    reports: List[EvalReport] = field(default_factory=list)
    agreement: List[AgreementReport] = field(default_factory=list)
    predictions: Dict[Tuple[str, str], PredictionSet] = field(default_factory=dict)

    def add(self, path: Path) -> Path:
        self.files.append(path)
        return path


@contextmanager
def stage(name: str) -> Iterator[None]:
    logger.info("stage: %s", name)
    try:
        yield
    except StageError:
        raise
    except (DangerlexError, OSError, ValueError) as exc:
        raise StageError(name, exc) from exc


def write_segmented(
    corpus: Corpus,
    out: Path | str,
    config: SegmenterConfig,
    header: Optional[Mapping[str, str]] = None,
) -> Tuple[Path, Path]:
    """Write the segmented corpus and its ``<out>.meta.json`` sidecar."""
    out = write_corpus(corpus, out)
    meta = dict(header or {})
    meta.update(
        {
            "segmentation_scope": "document",
            "segmenter": config.describe(),
            "documents": len(corpus.documents),
            "units": corpus.unit_count,
        }
    )
    sidecar = out.with_name(out.name + ".meta.json")
    write_text(sidecar, json.dumps(meta, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    return out, sidecar


def _kg_enabled(config: PipelineConfig) -> bool:
    return any(v is not None for v in (config.kg_dump, config.kg_api_url, config.kg_cache_dir))


def prepare_wordlists(config: PipelineConfig, target: Path, header: Optional[Mapping[str, str]] = None) -> Path:
    """Copy every list of ``wordlist_dir`` to ``target`` and add the configured expansions."""
    for provenance in available_provenances(config.wordlist_dir):
        for wordlist in load_wordlist_dir(config.wordlist_dir, provenance).values():
            write_wordlist(wordlist, target / wordlist.filename, header)
    lemmas = load_lemma_table(config.lemma_table)
    if config.vectors_path is not None:
        store = load_vectors(config.vectors_path)
        expand_directory(
            config.wordlist_dir,
            target,
            "embeddings",
            store=store,
            lemmas=lemmas,
            k=config.expansion_k,
            header=header,
        )
    if _kg_enabled(config):
        client = KgClient(
            load_settings(),
            dump=config.kg_dump,
            api_url=config.kg_api_url,
            cache_dir=config.kg_cache_dir,
            cache_only=config.kg_cache_only,
        )
        expand_directory(config.wordlist_dir, target, "kg", client=client, header=header)
    return target


def _has_gold(corpus: Corpus) -> bool:
    return any(unit.gold for unit in corpus.units())


def run_pipeline(config: PipelineConfig) -> RunResult:
    with stage("config"):
        config.validate()
    config_hash = config.config_hash()
    header = provenance_header(config_hash)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    result = RunResult(out, config_hash)

    with stage("load"):
        corpus = load_corpus(config.corpus_path, config.format)
    if config.format is CorpusFormat.RAW_TEXT_DIR:
        with stage("segment"):
            segmenter = config.segmenter_config()
            corpus = segment_corpus(corpus, segmenter, jobs=config.jobs)
            result.files.extend(write_segmented(corpus, out / "corpus.segmented.jsonl", segmenter, header))

    with stage("expand"):
        lists_dir = prepare_wordlists(config, out / "wordlists", header)
        result.files.extend(sorted(lists_dir.glob("*.txt")))
        lemmas = load_lemma_table(config.lemma_table)
        provenances = available_provenances(lists_dir)
        result.add(write_tsv(out / "wordlists.tsv", wordlist_statistics(lists_dir), header, index=True))

    evaluable = _has_gold(corpus)
    if not evaluable:
        logger.warning("corpus carries no gold labels; evaluation and error attribution are skipped")
    error_tables: Dict[str, pd.DataFrame] = {}
    missed_frames: List[pd.DataFrame] = []
    missed_counts: Dict[str, int] = {}
    for provenance in provenances:
        with stage("detect"):
            targets = detection_lists(lists_dir, provenance)
        for task, list_name in TASKS:
            if list_name not in targets:
                logger.warning("no %s list with provenance %s", list_name, provenance.value)
                continue
            run_name = f"{task}.{provenance.value}"
            with stage("detect"):
                prediction = detect(
                    corpus, targets[list_name], lemmas, config.scope, config.types_only, jobs=config.jobs
                )
                result.predictions[(task, provenance.value)] = prediction
                result.add(
                    write_tsv(
                        out / "predictions" / f"{run_name}.tsv",
                        predictions_frame(prediction),
                        {**header, **prediction_header(prediction)},
                    )
                )
            if not evaluable:
                continue
            with stage("evaluate"):
                report = evaluate(prediction, corpus, task, config.policy)
                result.reports.append(report)
            with stage("error-report"):
                gold = binary_gold(corpus, task, config.policy)
                stats = attribute_errors(prediction, gold, targets[list_name])
                for key in (RankKey.FP, RankKey.TP):
                    table = rank_report(stats, key, config.top_n)
                    result.add(write_tsv(out / "errors" / f"{run_name}.{key.value}.tsv", table, header))
                    if provenance is Provenance.BASE:
                        error_tables[f"{task} words by {key.value} ({provenance.value})"] = table
                missed = false_negative_frame(false_negatives(prediction, gold, corpus))
                missed.insert(0, "run", run_name)
                missed_frames.append(missed)
                missed_counts[run_name] = len(missed)

    agreement: List[AgreementReport] = []
    if evaluable:
        with stage("agreement"):
            for scheme in AgreementScheme:
                try:
                    agreement.append(agreement_suite(corpus, scheme))
                except EvaluationError as exc:
                    logger.warning("agreement (%s) skipped: %s", scheme.value, exc)
                    break
        result.agreement = agreement
        frames = [r.frame().assign(scheme=r.scheme.value) for r in agreement]
        if frames:
            table = pd.concat(frames, ignore_index=True)[["scheme", "doc_id", "annotators", "kappa", "band", "degenerate"]]
            result.add(write_tsv(out / "agreement.tsv", table, header))

    with stage("report"):
        labels = label_statistics(corpus, config.policy)
        label_frame = pd.DataFrame({"label": list(labels), "units": list(labels.values())})
        result.add(write_tsv(out / "label_counts.tsv", label_frame, header))
        result.add(write_tsv(out / "results.tsv", eval_frame(result.reports), header))
        if missed_frames:
            result.add(write_tsv(out / "false_negatives.tsv", pd.concat(missed_frames, ignore_index=True), header))
        summary = render_summary(
            header,
            result.reports,
            agreement,
            labels,
            wordlist_statistics(lists_dir),
            error_tables,
            missed_counts,
        )
        result.add(write_text(out / "summary.md", summary))
    logger.info("run complete: %d files in %s", len(result.files), out)
    return result
