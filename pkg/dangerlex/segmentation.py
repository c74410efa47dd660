"""TextTiling segmentation of raw document text into paragraph units.

The text is cut into pseudosentences of ``w`` tokens. For every gap between
two adjacent pseudosentences the term-frequency vectors of the ``k``
pseudosentences on either side are compared by cosine similarity; the
smoothed similarity series is turned into depth scores and gaps whose depth
clears the cutoff become boundaries. Boundaries are snapped to the nearest
paragraph break of the source text when the text has any.
"""
from __future__ import annotations

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import FrozenSet, List, NamedTuple, Sequence, Tuple

import numpy as np
from nltk.tokenize import RegexpTokenizer

from .corpus import Corpus, Document, ParagraphUnit
from .resources import DEFAULT_STOPWORDS

logger = logging.getLogger(__name__)

_WORD_TOKENIZER = RegexpTokenizer(r"[^\W\d_]+")
_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n\s*")
_FLAT_TOLERANCE = 1e-9


class CutoffPolicy(str, Enum):
    HC = "hc"
    LC = "lc"

    @classmethod
    def parse(cls, raw: "CutoffPolicy | str") -> "CutoffPolicy":
        if isinstance(raw, CutoffPolicy):
            return raw
        try:
            return cls(raw.strip().lower())
        except ValueError as exc:
            raise ValueError(f"unknown cutoff policy {raw!r} (expected hc or lc)") from exc


class Token(NamedTuple):
    token: str
    is_stopword: bool
    offset: int


def load_stopwords(path: Path | str) -> FrozenSet[str]:
    return _load_stopwords_cached(str(Path(path).resolve()))


@lru_cache(maxsize=8)
def _load_stopwords_cached(path: str) -> FrozenSet[str]:
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def _default_stopwords() -> FrozenSet[str]:
    return load_stopwords(DEFAULT_STOPWORDS)


@dataclass(frozen=True)
class SegmenterConfig:
    pseudosentence_size: int = 20
    block_size: int = 10
    smoothing_width: int = 2
    smoothing_rounds: int = 1
    cutoff_policy: CutoffPolicy = CutoffPolicy.HC
    stopwords: FrozenSet[str] = field(default_factory=_default_stopwords, repr=False)
    # gaps closer than this (in pseudosentences) to a deeper boundary are dropped
    min_boundary_distance: int = 4

    def __post_init__(self) -> None:
        if self.pseudosentence_size < 1:
            raise ValueError("pseudosentence_size (w) must be >= 1")
        if self.block_size < 1:
            raise ValueError("block_size (k) must be >= 1")
        if self.smoothing_width < 1:
            raise ValueError("smoothing_width must be >= 1")
        if self.smoothing_rounds < 0:
            raise ValueError("smoothing_rounds must be >= 0")
        if self.min_boundary_distance < 1:
            raise ValueError("min_boundary_distance must be >= 1")
        object.__setattr__(self, "cutoff_policy", CutoffPolicy.parse(self.cutoff_policy))

    def describe(self) -> dict:
        return {
            "w": self.pseudosentence_size,
            "k": self.block_size,
            "smoothing_width": self.smoothing_width,
            "smoothing_rounds": self.smoothing_rounds,
            "cutoff": self.cutoff_policy.value,
            "stopword_count": len(self.stopwords),
            "min_boundary_distance": self.min_boundary_distance,
        }


@dataclass(frozen=True)
class GapScoreSeries:
    """Similarity per pseudosentence gap; depth is computed on ``smoothed``."""

    scores: Tuple[float, ...]
    smoothed: Tuple[float, ...]
    depth_scores: Tuple[float, ...]


def tokenize(text: str, stopwords: FrozenSet[str] | set = frozenset()) -> List[Token]:
    tokens: List[Token] = []
    for start, end in _WORD_TOKENIZER.span_tokenize(text):
        word = text[start:end].lower()
        tokens.append(Token(word, word in stopwords, start))
    return tokens


def _pseudosentence_counts(tokens: Sequence[Token], w: int) -> np.ndarray:
    vocabulary: dict = {}
    rows: List[int] = []
    cols: List[int] = []
    for index, tok in enumerate(tokens):
        if tok.is_stopword:
            continue
        rows.append(index // w)
        cols.append(vocabulary.setdefault(tok.token, len(vocabulary)))
    n_sequences = -(-len(tokens) // w)
    counts = np.zeros((n_sequences, max(len(vocabulary), 1)), dtype=np.float64)
    if rows:
        np.add.at(counts, (np.asarray(rows), np.asarray(cols)), 1.0)
    return counts


def _block_similarities(counts: np.ndarray, k: int) -> np.ndarray:
    n_sequences = counts.shape[0]
    cumulative = np.vstack([np.zeros((1, counts.shape[1])), np.cumsum(counts, axis=0)])
    scores = np.zeros(max(n_sequences - 1, 0), dtype=np.float64)
    for gap in range(n_sequences - 1):
        left = cumulative[gap + 1] - cumulative[max(0, gap - k + 1)]
        right = cumulative[min(n_sequences, gap + 1 + k)] - cumulative[gap + 1]
        norm = np.linalg.norm(left) * np.linalg.norm(right)
        scores[gap] = float(left @ right / norm) if norm > 0 else 0.0
    return np.clip(scores, 0.0, 1.0)


def _smooth(scores: np.ndarray, width: int, rounds: int) -> np.ndarray:
    smoothed = scores.copy()
    kernel = np.ones(2 * width + 1) / (2 * width + 1)
    for _ in range(rounds):
        if smoothed.size < 2:
            break
        padded = np.pad(smoothed, width, mode="edge")
        smoothed = np.convolve(padded, kernel, mode="valid")
    return smoothed


def _depth_scores(scores: np.ndarray) -> np.ndarray:
    depth = np.zeros_like(scores)
    for i, score in enumerate(scores):
        left_peak = score
        for j in range(i - 1, -1, -1):
            if scores[j] < left_peak:
                break
            left_peak = scores[j]
        right_peak = score
        for j in range(i + 1, scores.size):
            if scores[j] < right_peak:
                break
            right_peak = scores[j]
        depth[i] = left_peak + right_peak - 2 * score
    depth[depth < _FLAT_TOLERANCE] = 0.0
    return depth


def gap_scores(text: str, config: SegmenterConfig | None = None) -> GapScoreSeries:
    config = config or SegmenterConfig()
    tokens = tokenize(text, config.stopwords)
    counts = _pseudosentence_counts(tokens, config.pseudosentence_size)
    raw = _block_similarities(counts, config.block_size)
    smoothed = _smooth(raw, config.smoothing_width, config.smoothing_rounds)
    depth = _depth_scores(smoothed)
    return GapScoreSeries(tuple(raw.tolist()), tuple(smoothed.tolist()), tuple(depth.tolist()))


def cutoff(depth_scores: Sequence[float], policy: CutoffPolicy) -> float:
    depth = np.asarray(depth_scores, dtype=np.float64)
    if depth.size == 0:
        return 0.0
    mean, std = float(depth.mean()), float(depth.std())
    if policy is CutoffPolicy.LC:
        return mean - std
    return mean - std / 2.0


def candidate_gaps(depth_scores: Sequence[float], policy: CutoffPolicy) -> List[int]:
    threshold = max(cutoff(depth_scores, policy), 0.0)
    return [i for i, depth in enumerate(depth_scores) if depth > threshold]


def boundary_gaps(depth_scores: Sequence[float], config: SegmenterConfig) -> List[int]:
    candidates = candidate_gaps(depth_scores, config.cutoff_policy)
    ranked = sorted(candidates, key=lambda i: (-depth_scores[i], i))
    accepted: List[int] = []
    for gap in ranked:
        if all(abs(gap - other) >= config.min_boundary_distance for other in accepted):
            accepted.append(gap)
    return sorted(accepted)


def paragraph_breaks(text: str) -> List[int]:
    breaks = [m.end() for m in _PARAGRAPH_BREAK.finditer(text)]
    return [b for b in breaks if 0 < b < len(text)]


def _snap(offset: int, breaks: Sequence[int]) -> int:
    return min(breaks, key=lambda b: (abs(b - offset), b))


def segment(text: str, config: SegmenterConfig | None = None) -> List[Tuple[int, int]]:
    config = config or SegmenterConfig()
    tokens = tokenize(text, config.stopwords)
    w = config.pseudosentence_size
    if len(tokens) < 2 * w:
        return [(0, len(text))]
    series = gap_scores(text, config)
    offsets = [tokens[(gap + 1) * w].offset for gap in boundary_gaps(series.depth_scores, config)]
    breaks = paragraph_breaks(text)
    if breaks:
        offsets = [_snap(offset, breaks) for offset in offsets]
    cuts = sorted({o for o in offsets if 0 < o < len(text)})
    edges = [0] + cuts + [len(text)]
    return list(zip(edges[:-1], edges[1:]))


def segment_document(document: Document, config: SegmenterConfig | None = None) -> Document:
    units: List[ParagraphUnit] = []
    for start, end in segment(document.raw_text, config):
        piece = document.raw_text[start:end].strip()
        if piece:
            units.append(ParagraphUnit(document.doc_id, len(units), piece))
    logger.debug("%s: %d segments", document.doc_id, len(units))
    # same text a reload of the written JSONL rebuilds
    raw_text = "\n\n".join(u.text for u in units)
    return replace(document, raw_text=raw_text, units=tuple(units))


def segment_corpus(corpus: Corpus, config: SegmenterConfig | None = None, jobs: int = 1) -> Corpus:
    config = config or SegmenterConfig()
    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        documents = tuple(pool.map(lambda d: segment_document(d, config), corpus.documents))
    logger.info(
        "segmented %d documents into %d units (w=%d, k=%d, cutoff=%s)",
        len(documents),
        sum(len(d.units) for d in documents),
        config.pseudosentence_size,
        config.block_size,
        config.cutoff_policy.value,
    )
    return Corpus(documents)
