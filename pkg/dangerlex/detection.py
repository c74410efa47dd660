"""Word-list scoring of paragraph units and the above-the-mean decision rule.

A unit's count is the number of its lemmatised tokens found in the list
(occurrences by default, distinct words with ``types_only``). A unit is
positive when its count is strictly greater than the mean count of all units
in scope: the whole corpus, or the unit's own document.
"""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from .corpus import Corpus, Document, UnitKey
from .errors import DetectionError
from .lexicon import LemmaTable, WordList, lemmatize_unit

logger = logging.getLogger(__name__)

PREDICTION_COLUMNS = ["doc_id", "unit_id", "count", "threshold", "decision", "matched_words"]


class ThresholdScope(str, Enum):
    GLOBAL = "global"
    PER_DOCUMENT = "per-document"

    @classmethod
    def parse(cls, raw: "ThresholdScope | str") -> "ThresholdScope":
        if isinstance(raw, ThresholdScope):
            return raw
        value = raw.strip().lower()
        if value in {"per-doc", "per_doc", "document"}:
            return cls.PER_DOCUMENT
        try:
            return cls(value)
        except ValueError as exc:
            raise ValueError(f"unknown threshold scope {raw!r} (expected global or per-doc)") from exc


class Decision(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class UnitScore:
    doc_id: str
    unit_id: int
    list_name: str
    count: int
    matched_words: Counter = field(default_factory=Counter)

    @property
    def key(self) -> UnitKey:
        return (self.doc_id, self.unit_id)


@dataclass(frozen=True)
class PredictionSet:
    list_name: str
    threshold: float
    decisions: Dict[UnitKey, Decision]
    scores: Tuple[UnitScore, ...]
    scope: ThresholdScope = ThresholdScope.GLOBAL
    doc_thresholds: Dict[str, float] = field(default_factory=dict)
    types_only: bool = False
    provenance: Optional[str] = None

    def threshold_for(self, doc_id: str) -> float:
        if self.scope is ThresholdScope.PER_DOCUMENT:
            return self.doc_thresholds[doc_id]
        return self.threshold

    def is_positive(self, key: UnitKey) -> bool:
        return self.decisions[key] is Decision.POSITIVE

    def positives(self) -> List[UnitKey]:
        return [s.key for s in self.scores if self.decisions[s.key] is Decision.POSITIVE]

    def restrict(self, doc_ids: Iterable[str]) -> "PredictionSet":
        """Same decisions and thresholds, only the units of ``doc_ids``."""
        wanted = set(doc_ids)
        return self._keep([s for s in self.scores if s.doc_id in wanted])

    def without(self, keys: Iterable[UnitKey]) -> "PredictionSet":
        dropped = set(keys)
        return self._keep([s for s in self.scores if s.key not in dropped])

    def _keep(self, scores: Sequence[UnitScore]) -> "PredictionSet":
        docs = {s.doc_id for s in scores}
        return PredictionSet(
            self.list_name,
            self.threshold,
            {s.key: self.decisions[s.key] for s in scores},
            tuple(scores),
            self.scope,
            {d: t for d, t in self.doc_thresholds.items() if d in docs},
            self.types_only,
            self.provenance,
        )


def _score_document(document: Document, wordlist: WordList, lemmas: LemmaTable, types_only: bool) -> List[UnitScore]:
    scores: List[UnitScore] = []
    for unit in document.units:
        lemma_counts = lemmatize_unit(unit.text, lemmas)
        matched = Counter({w: n for w, n in lemma_counts.items() if w in wordlist.words})
        if types_only:
            matched = Counter({w: 1 for w in matched})
        scores.append(UnitScore(unit.doc_id, unit.unit_id, wordlist.name, sum(matched.values()), matched))
    return scores


def score_units(
    corpus: Corpus,
    wordlist: WordList,
    lemmas: LemmaTable,
    types_only: bool = False,
    jobs: int = 1,
) -> List[UnitScore]:
    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool:
        per_document = pool.map(lambda d: _score_document(d, wordlist, lemmas, types_only), corpus.documents)
        return [score for scores in per_document for score in scores]


def _mean(counts: Sequence[int]) -> float:
    return sum(counts) / len(counts)


def classify(
    scores: Sequence[UnitScore],
    scope: ThresholdScope | str = ThresholdScope.GLOBAL,
    types_only: bool = False,
    provenance: Optional[str] = None,
) -> PredictionSet:
    if not scores:
        raise DetectionError("cannot classify an empty set of unit scores")
    scope = ThresholdScope.parse(scope)
    names = {s.list_name for s in scores}
    if len(names) > 1:
        raise DetectionError(f"scores from several word lists mixed: {sorted(names)}")
    threshold = _mean([s.count for s in scores])
    doc_thresholds: Dict[str, float] = {}
    if scope is ThresholdScope.PER_DOCUMENT:
        by_doc: Dict[str, List[int]] = {}
        for s in scores:
            by_doc.setdefault(s.doc_id, []).append(s.count)
        doc_thresholds = {doc_id: _mean(counts) for doc_id, counts in by_doc.items()}
    decisions: Dict[UnitKey, Decision] = {}
    for s in scores:
        limit = doc_thresholds[s.doc_id] if doc_thresholds else threshold
        decisions[s.key] = Decision.POSITIVE if s.count > limit else Decision.NEGATIVE
    prediction = PredictionSet(
        names.pop(), threshold, decisions, tuple(scores), scope, doc_thresholds, types_only, provenance
    )
    logger.info(
        "%s: %d/%d units positive (threshold %.3f, %s)",
        prediction.list_name,
        len(prediction.positives()),
        len(scores),
        threshold,
        scope.value,
    )
    return prediction


def detect(
    corpus: Corpus,
    wordlist: WordList,
    lemmas: LemmaTable,
    scope: ThresholdScope | str = ThresholdScope.GLOBAL,
    types_only: bool = False,
    jobs: int = 1,
) -> PredictionSet:
    scores = score_units(corpus, wordlist, lemmas, types_only=types_only, jobs=jobs)
    return classify(scores, scope, types_only=types_only, provenance=wordlist.provenance.value)


def _joined(matched: Counter) -> str:
    return ";".join(w for w in sorted(matched) for _ in range(matched[w]))


def predictions_frame(prediction: PredictionSet) -> pd.DataFrame:
    rows = [
        {
            "doc_id": s.doc_id,
            "unit_id": s.unit_id,
            "count": s.count,
            "threshold": f"{prediction.threshold_for(s.doc_id):.4f}",
            "decision": prediction.decisions[s.key].value,
            "matched_words": _joined(s.matched_words),
        }
        for s in prediction.scores
    ]
    return pd.DataFrame(rows, columns=PREDICTION_COLUMNS)


def prediction_header(prediction: PredictionSet) -> Dict[str, str]:
    return {
        "list": prediction.list_name,
        "provenance": prediction.provenance or "",
        "scope": prediction.scope.value,
        "types_only": str(prediction.types_only).lower(),
        "threshold": f"{prediction.threshold:.6f}",
    }


def read_predictions(path: Path | str) -> PredictionSet:
    path = Path(path)
    header: Dict[str, str] = {}
    with path.open(encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].partition(":")
            header[key.strip()] = value.strip()
    try:
        frame = pd.read_csv(
            path, sep="\t", comment="#", dtype={"doc_id": str, "matched_words": str, "decision": str},
            keep_default_na=False,
        )
    except (ValueError, pd.errors.ParserError) as exc:
        raise DetectionError(f"{path}: unreadable prediction file ({exc})") from exc
    missing = [c for c in PREDICTION_COLUMNS if c not in frame.columns]
    if missing:
        raise DetectionError(f"{path}: prediction file lacks columns {missing}")
    scope = ThresholdScope.parse(header.get("scope", ThresholdScope.GLOBAL.value))
    list_name = header.get("list", "")
    scores: List[UnitScore] = []
    decisions: Dict[UnitKey, Decision] = {}
    doc_thresholds: Dict[str, float] = {}
    for row in frame.itertuples(index=False):
        matched = Counter(w for w in str(row.matched_words).split(";") if w)
        score = UnitScore(str(row.doc_id), int(row.unit_id), list_name, int(row.count), matched)
        try:
            decisions[score.key] = Decision(str(row.decision))
        except ValueError as exc:
            raise DetectionError(f"{path}: unit {score.key}: bad decision {row.decision!r}") from exc
        doc_thresholds[score.doc_id] = float(row.threshold)
        scores.append(score)
    if scope is ThresholdScope.GLOBAL:
        doc_thresholds = {}
    threshold = float(header["threshold"]) if header.get("threshold") else _mean([s.count for s in scores] or [0])
    return PredictionSet(
        list_name,
        threshold,
        decisions,
        tuple(scores),
        scope,
        doc_thresholds,
        header.get("types_only", "false") == "true",
        header.get("provenance") or None,
    )
