from __future__ import annotations

import io
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

import pandas as pd

from . import __version__
from .evaluation import AgreementReport, EvalReport

logger = logging.getLogger(__name__)


def provenance_header(config_hash: str, extra: Optional[Mapping[str, Any]] = None) -> Dict[str, str]:
    header = {"tool": f"dangerlex {__version__}", "config": config_hash}
    for key, value in (extra or {}).items():
        header[key] = str(value)
    return header


def _header_lines(header: Mapping[str, str]) -> str:
    return "".join(f"# {key}: {value}\n" for key, value in header.items())


def frame_to_tsv(frame: pd.DataFrame, header: Optional[Mapping[str, str]] = None, index: bool = False) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, sep="\t", index=index, lineterminator="\n")
    return _header_lines(header or {}) + buffer.getvalue()


def write_text(path: Path | str, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.debug("wrote %s", path)
    return path


def write_tsv(
    path: Path | str,
    frame: pd.DataFrame,
    header: Optional[Mapping[str, str]] = None,
    index: bool = False,
) -> Path:
    return write_text(path, frame_to_tsv(frame, header, index))


def _table_md(headers: List[str], rows: List[List[Any]]) -> str:
    head = "| " + " | ".join(headers) + " |"
    sep = "| " + " | ".join(["---"] * len(headers)) + " |"
    if not rows:
        return "\n".join([head, sep])
    body = "\n".join("| " + " | ".join("" if v is None else str(v) for v in row) + " |" for row in rows)
    return "\n".join([head, sep, body])


def frame_md(frame: pd.DataFrame, index: bool = False) -> str:
    headers = ([frame.index.name or ""] if index else []) + [str(c) for c in frame.columns]
    rows = []
    for label, row in frame.iterrows():
        values = ["" if pd.isna(v) else v for v in row.tolist()]
        rows.append(([label] if index else []) + values)
    return _table_md(headers, rows)


def aligned_text(frame: pd.DataFrame, index: bool = False) -> str:
    if frame.empty:
        return "(no rows)"
    return frame.to_string(index=index)


def eval_frame(reports: Sequence[EvalReport]) -> pd.DataFrame:
    columns = ["task", "provenance", "tp", "fp", "fn", "tn", "precision", "recall", "f1"]
    return pd.DataFrame([r.row() for r in reports], columns=columns)


def results_grid_md(reports: Sequence[EvalReport]) -> str:
    """Provenance rows, one P/R/F1 column triple per task."""
    by_key = {(r.task, r.provenance): r for r in reports}
    tasks = [t for t in ("danger", "fear") if any(r.task == t for r in reports)]
    provenances: List[str] = []
    for report in reports:
        if report.provenance not in provenances:
            provenances.append(report.provenance)
    headers = ["word list"] + [f"{task} {m}" for task in tasks for m in ("P", "R", "F1")]
    rows: List[List[Any]] = []
    for provenance in provenances:
        row: List[Any] = [provenance]
        for task in tasks:
            report = by_key.get((task, provenance))
            if report is None:
                row += ["", "", ""]
            else:
                row += [f"{report.precision:.1f}", f"{report.recall:.1f}", f"{report.f1:.1f}"]
        rows.append(row)
    return _table_md(headers, rows)


def agreement_md(reports: Sequence[AgreementReport]) -> str:
    rows = []
    for report in reports:
        flagged = f" ({len(report.degenerate_texts)} degenerate)" if report.degenerate_texts else ""
        rows.append([report.scheme.value, len(report.per_text), f"{report.average:.3f}", report.band + flagged])
    return _table_md(["scheme", "texts", "average kappa", "band"], rows)


def render_summary(
    header: Mapping[str, str],
    reports: Sequence[EvalReport],
    agreement: Sequence[AgreementReport],
    label_counts: Mapping[str, int],
    wordlists: pd.DataFrame,
    error_tables: Mapping[str, pd.DataFrame],
    false_negative_counts: Mapping[str, int],
) -> str:
    md: List[str] = []
    md.append("# dangerlex run summary")
    md.extend(f"- {key}: {value}" for key, value in header.items())
    if reports:
        first = reports[0]
        md.append(f"- gold policy: {first.policy.value}")
        md.append(f"- threshold scope: {first.scope}")
        md.append(f"- unannotated units excluded: {first.excluded_units}")
    md.append("")
    md.append("## Detection results")
    md.append(results_grid_md(reports))
    md.append("")
    md.append("## Annotator agreement")
    md.append(agreement_md(agreement) if agreement else "No text has two annotators.")
    md.append("")
    md.append("## Gold label counts")
    md.append(_table_md(["label", "units"], [[k, v] for k, v in label_counts.items()]))
    md.append("")
    md.append("## Word lists")
    md.append(frame_md(wordlists, index=True))
    for title, table in error_tables.items():
        md.append("")
        md.append(f"## {title}")
        md.append(frame_md(table) if not table.empty else "No attributable words.")
    if false_negative_counts:
        md.append("")
        md.append("## Missed units")
        md.append(_table_md(["run", "false negatives"], [[k, v] for k, v in false_negative_counts.items()]))
    return "\n".join(md) + "\n"
