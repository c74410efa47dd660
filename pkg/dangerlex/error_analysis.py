"""Per-word attribution of true and false positives, and the false-negative listing.

Counting is per unit: a word that occurs three times in one false-positive
paragraph adds one to its ``fp_units``.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence

import pandas as pd

from .corpus import Corpus, UnitKey
from .detection import PredictionSet
from .evaluation import round_half_up
from .lexicon import WordList

logger = logging.getLogger(__name__)

RANK_COLUMNS = ["word", "tp", "fp", "tp_ratio"]
UNDEFINED = "—"


class RankKey(str, Enum):
    FP = "fp"
    TP = "tp"
    RATIO = "ratio"

    @classmethod
    def parse(cls, raw: "RankKey | str") -> "RankKey":
        if isinstance(raw, RankKey):
            return raw
        try:
            return cls(raw.strip().lower())
        except ValueError as exc:
            raise ValueError(f"unknown sort key {raw!r} (expected fp, tp or ratio)") from exc


@dataclass(frozen=True)
class WordErrorStat:
    word: str
    tp_units: int = 0
    fp_units: int = 0

    @property
    def tp_ratio(self) -> Optional[float]:
        total = self.tp_units + self.fp_units
        if total == 0:
            return None
        return self.tp_units / total

    def ratio_text(self) -> str:
        ratio = self.tp_ratio
        return UNDEFINED if ratio is None else f"{round_half_up(ratio, 2):.2f}"


@dataclass(frozen=True)
class FalseNegative:
    doc_id: str
    unit_id: int
    count: int
    threshold: float
    excerpt: str = ""


def attribute_errors(
    pred: PredictionSet,
    gold: Mapping[UnitKey, bool],
    wordlist: Optional[WordList] = None,
) -> List[WordErrorStat]:
    """One stat per word seen in a positive unit; ``wordlist`` adds zero rows for the rest."""
    tp: Counter = Counter()
    fp: Counter = Counter()
    for score in pred.scores:
        if not pred.is_positive(score.key) or score.key not in gold:
            continue
        bucket = tp if gold[score.key] else fp
        bucket.update(set(score.matched_words))
    words = set(tp) | set(fp)
    if wordlist is not None:
        words |= wordlist.words
    stats = [WordErrorStat(word, tp[word], fp[word]) for word in sorted(words)]
    logger.debug("%s: attributed %d words", pred.list_name, len(stats))
    return stats


def rank_report(stats: Sequence[WordErrorStat], by: RankKey | str = RankKey.FP, top_n: int = 10) -> pd.DataFrame:
    by = RankKey.parse(by)
    ranked = [s for s in stats if s.tp_ratio is not None]
    ranked.sort(key=lambda s: s.word)
    if by is RankKey.FP:
        ranked.sort(key=lambda s: s.fp_units, reverse=True)
    elif by is RankKey.TP:
        ranked.sort(key=lambda s: s.tp_units, reverse=True)
    else:
        ranked.sort(key=lambda s: s.tp_ratio, reverse=True)
    rows = [
        {"word": s.word, "tp": s.tp_units, "fp": s.fp_units, "tp_ratio": s.ratio_text()}
        for s in ranked[: max(top_n, 0)]
    ]
    return pd.DataFrame(rows, columns=RANK_COLUMNS)


def _excerpt(text: str, width: int) -> str:
    flat = " ".join(text.split())
    return flat if len(flat) <= width else flat[: width - 1].rstrip() + "…"


def false_negatives(
    pred: PredictionSet,
    gold: Mapping[UnitKey, bool],
    corpus: Optional[Corpus] = None,
    excerpt_width: int = 80,
) -> List[FalseNegative]:
    texts: Dict[UnitKey, str] = {}
    if corpus is not None:
        texts = {unit.key: unit.text for unit in corpus.units()}
    missed: List[FalseNegative] = []
    for score in pred.scores:
        if pred.is_positive(score.key) or not gold.get(score.key, False):
            continue
        missed.append(
            FalseNegative(
                score.doc_id,
                score.unit_id,
                score.count,
                pred.threshold_for(score.doc_id),
                _excerpt(texts.get(score.key, ""), excerpt_width),
            )
        )
    return missed


def false_negative_frame(missed: Sequence[FalseNegative]) -> pd.DataFrame:
    rows = [
        {
            "doc_id": m.doc_id,
            "unit_id": m.unit_id,
            "count": m.count,
            "threshold": f"{m.threshold:.4f}",
            "excerpt": m.excerpt,
        }
        for m in missed
    ]
    return pd.DataFrame(rows, columns=["doc_id", "unit_id", "count", "threshold", "excerpt"])
