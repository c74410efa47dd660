"""Precision/recall/F1 against gold labels and Cohen's kappa between annotators."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from sklearn.metrics import confusion_matrix

from .corpus import Corpus, GoldPolicy, ParagraphUnit, UnitKey, UnitLabel, binary_gold
from .detection import PredictionSet
from .errors import EvaluationError

logger = logging.getLogger(__name__)

NO_DANGER = "-"

_BANDS: Tuple[Tuple[float, str], ...] = (
    (0.0, "poor"),
    (0.20, "slight"),
    (0.40, "fair"),
    (0.60, "moderate"),
    (0.80, "substantial"),
    (1.0, "almost perfect"),
)


def round_half_up(value: float, places: int) -> float:
    quantum = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


class AgreementScheme(str, Enum):
    TYPED = "typed"
    ANY_DANGER = "any-danger"
    FEAR = "fear"

    @classmethod
    def parse(cls, raw: "AgreementScheme | str") -> "AgreementScheme":
        if isinstance(raw, AgreementScheme):
            return raw
        value = raw.strip().lower()
        if value == "any":
            return cls.ANY_DANGER
        try:
            return cls(value)
        except ValueError as exc:
            raise ValueError(f"unknown agreement scheme {raw!r} (expected typed, any or fear)") from exc


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class EvalReport:
    task: str
    provenance: str
    counts: ConfusionCounts
    precision: float
    recall: float
    f1: float
    policy: GoldPolicy = GoldPolicy.FIRST_ANNOTATOR
    excluded_units: int = 0
    scope: str = "global"

    def header(self) -> Dict[str, str]:
        return {
            "task": self.task,
            "provenance": self.provenance,
            "gold_policy": self.policy.value,
            "threshold_scope": self.scope,
            "unannotated_units_excluded": str(self.excluded_units),
        }

    def row(self) -> Dict[str, object]:
        return {
            "task": self.task,
            "provenance": self.provenance,
            "tp": self.counts.tp,
            "fp": self.counts.fp,
            "fn": self.counts.fn,
            "tn": self.counts.tn,
            "precision": f"{self.precision:.1f}",
            "recall": f"{self.recall:.1f}",
            "f1": f"{self.f1:.1f}",
        }


@dataclass(frozen=True)
class KappaResult:
    kappa: float
    observed: float
    expected: float
    degenerate: bool = False


@dataclass(frozen=True)
class AgreementReport:
    scheme: AgreementScheme
    per_text: Dict[str, float]
    average: float
    band: str
    annotators: Dict[str, Tuple[str, str]] = field(default_factory=dict)
    degenerate_texts: Tuple[str, ...] = ()

    def frame(self) -> pd.DataFrame:
        rows = [
            {
                "doc_id": doc_id,
                "annotators": "/".join(self.annotators.get(doc_id, ())),
                "kappa": f"{kappa:.3f}",
                "band": landis_koch_band(kappa),
                "degenerate": "yes" if doc_id in self.degenerate_texts else "no",
            }
            for doc_id, kappa in self.per_text.items()
        ]
        return pd.DataFrame(rows, columns=["doc_id", "annotators", "kappa", "band", "degenerate"])


def landis_koch_band(kappa: float) -> str:
    if kappa < 0:
        return "poor"
    for upper, name in _BANDS[1:]:
        if kappa <= upper:
            return name
    return _BANDS[-1][1]


def confusion(pred: PredictionSet, gold: Mapping[UnitKey, bool]) -> ConfusionCounts:
    keys = [score.key for score in pred.scores]
    missing = [key for key in keys if key not in gold]
    if missing:
        listed = ", ".join(f"{doc_id}/{unit_id}" for doc_id, unit_id in missing[:20])
        more = f" (+{len(missing) - 20} more)" if len(missing) > 20 else ""
        raise EvaluationError(f"{len(missing)} predicted units have no gold label: {listed}{more}")
    if not keys:
        return ConfusionCounts()
    y_true = [bool(gold[key]) for key in keys]
    y_pred = [pred.is_positive(key) for key in keys]
    tn, fp, fn, tp = confusion_matrix(y_true, y_pred, labels=[False, True]).ravel()
    return ConfusionCounts(int(tp), int(fp), int(fn), int(tn))


def harmonic_mean(precision: float, recall: float) -> float:
    if precision + recall <= 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def prf(counts: ConfusionCounts) -> Tuple[float, float, float]:
    """Precision, recall and F1 as percentages."""
    predicted = counts.tp + counts.fp
    actual = counts.tp + counts.fn
    precision = 100.0 * counts.tp / predicted if predicted else 0.0
    recall = 100.0 * counts.tp / actual if actual else 0.0
    return precision, recall, harmonic_mean(precision, recall)


def evaluate(
    pred: PredictionSet,
    corpus: Corpus,
    task: str,
    policy: GoldPolicy | str = GoldPolicy.FIRST_ANNOTATOR,
) -> EvalReport:
    policy = policy if isinstance(policy, GoldPolicy) else GoldPolicy.parse(policy)
    gold = binary_gold(corpus, task, policy)
    unannotated = {unit.key for unit in corpus.units() if not unit.gold}
    evaluated = pred.without(unannotated)
    excluded = len(pred.scores) - len(evaluated.scores)
    if excluded:
        logger.info("%s: %d unannotated units excluded from evaluation", task, excluded)
    counts = confusion(evaluated, gold)
    precision, recall, f1 = prf(counts)
    return EvalReport(
        task=task,
        provenance=pred.provenance or "",
        counts=counts,
        precision=round_half_up(precision, 1),
        recall=round_half_up(recall, 1),
        f1=round_half_up(f1, 1),
        policy=policy,
        excluded_units=excluded,
        scope=pred.scope.value,
    )


def kappa_details(
    a: Sequence[Hashable],
    b: Sequence[Hashable],
    label_space: Optional[Sequence[Hashable]] = None,
) -> KappaResult:
    if len(a) != len(b):
        raise EvaluationError(f"label vectors differ in length ({len(a)} vs {len(b)})")
    if not a:
        raise EvaluationError("label vectors are empty")
    space = list(label_space) if label_space is not None else sorted(set(a) | set(b), key=repr)
    allowed = set(space)
    outside = sorted({repr(x) for x in list(a) + list(b) if x not in allowed})
    if outside:
        raise EvaluationError(f"labels outside the label space: {', '.join(outside)}")
    table = confusion_matrix(list(a), list(b), labels=space).astype(np.float64)
    n = table.sum()
    observed = float(np.trace(table) / n)
    expected = float(table.sum(axis=1) @ table.sum(axis=0) / (n * n))
    if np.isclose(expected, 1.0, rtol=0.0, atol=1e-12):
        return KappaResult(1.0 if observed == 1.0 else 0.0, observed, expected, degenerate=True)
    return KappaResult((observed - expected) / (1.0 - expected), observed, expected)


def cohen_kappa(
    a: Sequence[Hashable],
    b: Sequence[Hashable],
    label_space: Optional[Sequence[Hashable]] = None,
) -> float:
    return kappa_details(a, b, label_space).kappa


def _scheme_label(label: UnitLabel, scheme: AgreementScheme) -> Hashable:
    if scheme is AgreementScheme.TYPED:
        return "+".join(label.sorted_types()) or NO_DANGER
    if scheme is AgreementScheme.ANY_DANGER:
        return label.any_danger
    return label.fear


def _annotator_order(units: Sequence[ParagraphUnit]) -> List[str]:
    order: List[str] = []
    for unit in units:
        for annotator in unit.gold:
            if annotator not in order:
                order.append(annotator)
    return order


def agreement_suite(corpus: Corpus, scheme: AgreementScheme | str = AgreementScheme.TYPED) -> AgreementReport:
    scheme = AgreementScheme.parse(scheme)
    per_text: Dict[str, float] = {}
    pairs: Dict[str, Tuple[str, str]] = {}
    degenerate: List[str] = []
    for document in corpus.documents:
        annotators = _annotator_order(document.units)
        if len(annotators) < 2:
            continue
        if len(annotators) > 2:
            logger.warning(
                "%s has %d annotators; comparing the first two (%s, %s)",
                document.doc_id, len(annotators), annotators[0], annotators[1],
            )
        first, second = annotators[0], annotators[1]
        shared = [u for u in document.units if first in u.gold and second in u.gold]
        if not shared:
            continue
        a = [_scheme_label(u.gold[first], scheme) for u in shared]
        b = [_scheme_label(u.gold[second], scheme) for u in shared]
        space = [False, True] if scheme is not AgreementScheme.TYPED else sorted(set(a) | set(b))
        result = kappa_details(a, b, space)
        per_text[document.doc_id] = result.kappa
        pairs[document.doc_id] = (first, second)
        if result.degenerate:
            degenerate.append(document.doc_id)
            logger.warning("%s: chance agreement is 1 under %s; kappa set to %.0f", document.doc_id, scheme.value, result.kappa)
    if not per_text:
        raise EvaluationError("no text has two annotators on shared units; agreement is undefined")
    average = float(np.mean(list(per_text.values())))
    return AgreementReport(scheme, per_text, average, landis_koch_band(average), pairs, tuple(degenerate))
