from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple


@dataclass(frozen=True)
class FlagSpec:
    names: Tuple[str, ...]
    help: str
    options: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class CommandSpec:
    name: str
    description: str
    flags: Tuple[FlagSpec, ...] = ()


def _flag(*names: str, help: str, **options: Any) -> FlagSpec:
    return FlagSpec(tuple(names), help, options)


_CORPUS_FORMATS = ["segmented-jsonl", "raw-text-dir"]
_POLICIES = ["first-annotator", "union", "intersection"]
_SCOPES = ["global", "per-doc"]
_TASKS = ["danger", "fear"]

_JOBS = _flag("--jobs", help="Worker threads for per-document stages.", type=int, default=None)

COMMANDS: List[CommandSpec] = [
    CommandSpec(
        name="segment",
        description="Split raw documents into paragraph units with TextTiling.",
        flags=(
            _flag("--input", help="Raw-text directory or corpus JSONL to segment.", required=True),
            _flag("--format", help="Input format.", choices=_CORPUS_FORMATS, default="raw-text-dir"),
            _flag("--out", help="Segmented corpus JSONL to write (a .meta.json sidecar is added).", required=True),
            _flag("--w", help="Pseudosentence size in tokens.", type=int, default=20),
            _flag("--k", help="Block size in pseudosentences.", type=int, default=10),
            _flag("--smoothing-width", help="Half-width of the smoothing window.", type=int, default=2),
            _flag("--smoothing-rounds", help="Smoothing passes.", type=int, default=1),
            _flag("--cutoff", help="Boundary cutoff policy.", choices=["hc", "lc"], default="hc"),
            _flag("--stopwords", help="Stopword file (one word per line); bundled German list by default."),
            _JOBS,
        ),
    ),
    CommandSpec(
        name="expand",
        description="Expand base word lists with embedding neighbours or knowledge-graph relations.",
        flags=(
            _flag("--base", help="A <Type>.base.txt file or a directory of them.", required=True),
            _flag("--method", help="Expansion source.", choices=["embeddings", "kg"], required=True),
            _flag("--out", help="Directory for the expanded <Type>.<provenance>.txt lists.", required=True),
            _flag("--vectors", help="Text-format embedding file (embeddings method)."),
            _flag("--lemmas", help="Lemma table TSV used to normalise neighbours; bundled table by default."),
            _flag("--k", help="Neighbours taken per base word.", type=int, default=50),
            _flag("--dump", help="Knowledge-graph assertion dump TSV (kg method)."),
            _flag("--api", help="Knowledge-graph REST endpoint for live lookups (kg method)."),
            _flag("--cache-dir", help="Per-word neighbour cache directory (kg method)."),
            _flag("--cache-only", help="Never touch the network; a cache miss is an error.", action="store_true"),
        ),
    ),
    CommandSpec(
        name="detect",
        description="Score units against word lists and flag those above the mean count.",
        flags=(
            _flag("--corpus", help="Segmented corpus JSONL.", required=True),
            _flag("--format", help="Corpus format.", choices=_CORPUS_FORMATS, default="segmented-jsonl"),
            _flag(
                "--list",
                help="Word list file; repeat to merge danger sublists into one Danger list.",
                action="append",
                required=True,
                dest="lists",
            ),
            _flag("--lemmas", help="Lemma table TSV; bundled table by default."),
            _flag("--scope", help="Threshold scope.", choices=_SCOPES, default="global"),
            _flag("--types-only", help="Count distinct matched words instead of occurrences.", action="store_true"),
            _flag("--out", help="Prediction TSV to write.", required=True),
            _JOBS,
        ),
    ),
    CommandSpec(
        name="evaluate",
        description="Precision, recall and F1 of a prediction file against gold labels.",
        flags=(
            _flag("--pred", help="Prediction TSV written by detect.", required=True),
            _flag("--corpus", help="Annotated corpus JSONL.", required=True),
            _flag("--task", help="Which gold label to compare with.", choices=_TASKS, required=True),
            _flag("--policy", help="Gold resolution across annotators.", choices=_POLICIES, default="first-annotator"),
            _flag("--out", help="Optional TSV for the report."),
        ),
    ),
    CommandSpec(
        name="agreement",
        description="Cohen's kappa between the first two annotators of every text.",
        flags=(
            _flag("--corpus", help="Annotated corpus JSONL.", required=True),
            _flag("--scheme", help="Label scheme compared.", choices=["typed", "any", "fear"], default="typed"),
            _flag("--out", help="Optional TSV of per-text kappa values."),
        ),
    ),
    CommandSpec(
        name="error-report",
        description="Rank list words by the true and false positives they cause.",
        flags=(
            _flag("--pred", help="Prediction TSV written by detect.", required=True),
            _flag("--corpus", help="Annotated corpus JSONL.", required=True),
            _flag("--task", help="Which gold label to compare with.", choices=_TASKS, required=True),
            _flag("--sort", help="Ranking column.", choices=["fp", "tp", "ratio"], default="fp"),
            _flag("--top", help="Rows to keep.", type=int, default=10),
            _flag("--policy", help="Gold resolution across annotators.", choices=_POLICIES, default="first-annotator"),
            _flag("--out", help="Optional TSV for the ranked table."),
            _flag("--false-negatives", help="Optional TSV listing missed units."),
        ),
    ),
    CommandSpec(
        name="run",
        description="Full pipeline from a config file; flags override file values.",
        flags=(
            _flag("--config", help="Key-value (dotenv syntax) pipeline config."),
            _flag("--corpus", help="Overrides CORPUS_PATH.", dest="corpus_path"),
            _flag("--format", help="Overrides CORPUS_FORMAT.", choices=_CORPUS_FORMATS, dest="corpus_format"),
            _flag("--wordlists", help="Overrides WORDLIST_DIR.", dest="wordlist_dir"),
            _flag("--lemmas", help="Overrides LEMMA_TABLE.", dest="lemma_table"),
            _flag("--stopwords", help="Overrides STOPWORDS."),
            _flag("--vectors", help="Overrides VECTORS_PATH.", dest="vectors_path"),
            _flag("--dump", help="Overrides KG_DUMP.", dest="kg_dump"),
            _flag("--api", help="Overrides KG_API_URL.", dest="kg_api_url"),
            _flag("--cache-dir", help="Overrides KG_CACHE_DIR.", dest="kg_cache_dir"),
            _flag("--cache-only", help="Overrides KG_CACHE_ONLY.", action="store_true", default=None, dest="kg_cache_only"),
            _flag("--w", help="Overrides SEGMENT_W.", type=int, dest="segment_w"),
            _flag("--k", help="Overrides SEGMENT_K.", type=int, dest="segment_k"),
            _flag("--smoothing-width", help="Overrides SEGMENT_SMOOTHING_WIDTH.", type=int, dest="segment_smoothing_width"),
            _flag("--smoothing-rounds", help="Overrides SEGMENT_SMOOTHING_ROUNDS.", type=int, dest="segment_smoothing_rounds"),
            _flag("--cutoff", help="Overrides SEGMENT_CUTOFF.", choices=["hc", "lc"], dest="segment_cutoff"),
            _flag("--expansion-k", help="Overrides EXPANSION_K.", type=int, dest="expansion_k"),
            _flag("--scope", help="Overrides DETECTION_SCOPE.", choices=_SCOPES, dest="detection_scope"),
            _flag("--types-only", help="Overrides TYPES_ONLY.", action="store_true", default=None),
            _flag("--policy", help="Overrides GOLD_POLICY.", choices=_POLICIES, dest="gold_policy"),
            _flag("--top", help="Overrides TOP_N.", type=int, dest="top_n"),
            _flag("--out", help="Overrides OUTPUT_DIR.", dest="output_dir"),
            _JOBS,
        ),
    ),
    CommandSpec(
        name="fixtures",
        description="Write the bundled synthetic corpus, lists and a ready-to-run config.",
        flags=(_flag("--out", help="Target directory.", required=True),),
    ),
]


def command_names() -> List[str]:
    return [spec.name for spec in COMMANDS]
