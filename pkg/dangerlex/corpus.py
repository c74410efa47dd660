"""Document / paragraph / label data model and the corpus file formats.

Two input formats are understood:

* ``segmented-jsonl`` -- one JSON object per paragraph unit::

    {"doc_id": "...", "unit_id": 0, "text": "...",
     "annotations": {"a1": {"danger_types": ["Natural"], "fear": false}}}

  An optional ``title`` key is carried through unchanged.
* ``raw-text-dir`` -- a directory of UTF-8 ``.txt`` files, one document each.
  Each document is loaded as a single unit; ``segmentation.segment_corpus``
  splits it afterwards.

Everything returned from this module is treated as immutable after load.
"""
from __future__ import annotations

import json
import logging
from collections import Counter, OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import CorpusFormatError, UnknownLabelError

logger = logging.getLogger(__name__)

UnitKey = Tuple[str, int]

_DANGER_PREFIX = "DangerousSituation"


class DangerType(str, Enum):
    DUEL = "Duel"
    ABDUCTION = "Abduction"
    NATURAL = "Natural"
    SUPERNATURAL = "Supernatural"
    AMBUSH = "Ambush"
    HITCHCOCK = "Hitchcock"
    OTHER = "Other"

    @classmethod
    def parse(cls, raw: str) -> "DangerType":
        name = raw.strip()
        if name.startswith(_DANGER_PREFIX):
            name = name[len(_DANGER_PREFIX):]
        for member in cls:
            if member.value == name:
                return member
        raise UnknownLabelError(f"unknown danger type {raw!r}")


class CorpusFormat(str, Enum):
    SEGMENTED_JSONL = "segmented-jsonl"
    RAW_TEXT_DIR = "raw-text-dir"

    @classmethod
    def parse(cls, raw: str) -> "CorpusFormat":
        try:
            return cls(raw.strip().lower())
        except ValueError as exc:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown corpus format {raw!r} (expected one of {choices})") from exc


class GoldPolicy(str, Enum):
    FIRST_ANNOTATOR = "first-annotator"
    UNION = "union"
    INTERSECTION = "intersection"

    @classmethod
    def parse(cls, raw: str) -> "GoldPolicy":
        try:
            return cls(raw.strip().lower())
        except ValueError as exc:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown gold policy {raw!r} (expected one of {choices})") from exc


@dataclass(frozen=True)
class UnitLabel:
    danger_types: FrozenSet[DangerType] = frozenset()
    fear: bool = False

    @property
    def any_danger(self) -> bool:
        return bool(self.danger_types)

    def sorted_types(self) -> List[str]:
        return [member.value for member in DangerType if member in self.danger_types]


@dataclass(frozen=True)
class ParagraphUnit:
    doc_id: str
    unit_id: int
    text: str
    gold: Dict[str, UnitLabel] = field(default_factory=dict)

    @property
    def key(self) -> UnitKey:
        return (self.doc_id, self.unit_id)


@dataclass(frozen=True)
class Document:
    doc_id: str
    title: str
    raw_text: str
    units: Tuple[ParagraphUnit, ...] = ()


@dataclass(frozen=True)
class Corpus:
    documents: Tuple[Document, ...] = ()

    def units(self) -> Iterator[ParagraphUnit]:
        for document in self.documents:
            yield from document.units

    @property
    def unit_count(self) -> int:
        return sum(len(d.units) for d in self.documents)

    def document(self, doc_id: str) -> Document:
        for document in self.documents:
            if document.doc_id == doc_id:
                return document
        raise KeyError(doc_id)


class AnnotationRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    danger_types: List[str] = Field(default_factory=list)
    fear: bool = False


class CorpusRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    doc_id: str = Field(min_length=1)
    unit_id: int = Field(ge=0)
    text: str
    title: Optional[str] = None
    annotations: Dict[str, AnnotationRecord] = Field(default_factory=dict)

    @field_validator("text")
    @classmethod
    def _text_not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("text must be non-empty")
        return value


def collapse_labels(label: UnitLabel) -> Tuple[bool, bool]:
    return label.any_danger, label.fear


def resolve_gold(unit: ParagraphUnit, policy: GoldPolicy = GoldPolicy.FIRST_ANNOTATOR) -> Optional[UnitLabel]:
    labels = list(unit.gold.values())
    if not labels:
        return None
    if policy is GoldPolicy.FIRST_ANNOTATOR:
        return labels[0]
    if policy is GoldPolicy.UNION:
        types: FrozenSet[DangerType] = frozenset().union(*(l.danger_types for l in labels))
        return UnitLabel(types, any(l.fear for l in labels))
    types = frozenset.intersection(*(l.danger_types for l in labels))
    return UnitLabel(types, all(l.fear for l in labels))


def gold_labels(corpus: Corpus, policy: GoldPolicy = GoldPolicy.FIRST_ANNOTATOR) -> Dict[UnitKey, UnitLabel]:
    resolved: Dict[UnitKey, UnitLabel] = {}
    for unit in corpus.units():
        label = resolve_gold(unit, policy)
        if label is not None:
            resolved[unit.key] = label
    return resolved


def binary_gold(corpus: Corpus, task: str, policy: GoldPolicy = GoldPolicy.FIRST_ANNOTATOR) -> Dict[UnitKey, bool]:
    if task not in {"danger", "fear"}:
        raise ValueError(f"unknown task {task!r} (expected danger or fear)")
    index = 0 if task == "danger" else 1
    return {key: collapse_labels(label)[index] for key, label in gold_labels(corpus, policy).items()}


def label_statistics(corpus: Corpus, policy: GoldPolicy = GoldPolicy.FIRST_ANNOTATOR) -> Dict[str, int]:
    counts: Counter = Counter()
    for label in gold_labels(corpus, policy).values():
        for danger_type in label.danger_types:
            counts[f"{_DANGER_PREFIX}{danger_type.value}"] += 1
        if label.any_danger:
            counts["AnyDangerousSituation"] += 1
        if label.fear:
            counts["FearDescription"] += 1
    ordered = [f"{_DANGER_PREFIX}{m.value}" for m in DangerType]
    ordered += ["AnyDangerousSituation", "FearDescription"]
    return {name: counts.get(name, 0) for name in ordered}


def _label_from_record(record: AnnotationRecord, where: str, annotator: str) -> UnitLabel:
    types = []
    for raw in record.danger_types:
        try:
            types.append(DangerType.parse(raw))
        except UnknownLabelError as exc:
            raise UnknownLabelError(f"{where}: {exc} (annotator {annotator!r})") from exc
    return UnitLabel(frozenset(types), record.fear)


def _load_jsonl(path: Path) -> Corpus:
    grouped: "OrderedDict[str, Dict[int, ParagraphUnit]]" = OrderedDict()
    titles: Dict[str, str] = {}
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                record = CorpusRecord.model_validate_json(line)
            except ValidationError as exc:
                first = exc.errors()[0]
                loc = ".".join(str(p) for p in first.get("loc", ())) or "record"
                raise CorpusFormatError(f"{where}: malformed record ({loc}: {first.get('msg')})") from exc
            where = f"{where} (record {record.doc_id}/{record.unit_id})"
            gold = {
                annotator: _label_from_record(annotation, where, annotator)
                for annotator, annotation in record.annotations.items()
            }
            units = grouped.setdefault(record.doc_id, {})
            if record.unit_id in units:
                raise CorpusFormatError(f"{where}: duplicate unit_id {record.unit_id} in {record.doc_id!r}")
            units[record.unit_id] = ParagraphUnit(record.doc_id, record.unit_id, record.text, gold)
            if record.title and record.doc_id not in titles:
                titles[record.doc_id] = record.title

    documents: List[Document] = []
    for doc_id in sorted(grouped):
        units = grouped[doc_id]
        ids = sorted(units)
        if ids != list(range(len(ids))):
            raise CorpusFormatError(f"{path}: unit_ids of {doc_id!r} are not contiguous from 0: {ids}")
        ordered = tuple(units[i] for i in ids)
        raw_text = "\n\n".join(u.text for u in ordered)
        documents.append(Document(doc_id, titles.get(doc_id, doc_id), raw_text, ordered))
    logger.info("loaded %d documents / %d units from %s", len(documents), sum(len(d.units) for d in documents), path)
    return Corpus(tuple(documents))


def _load_text_dir(path: Path) -> Corpus:
    if not path.is_dir():
        raise CorpusFormatError(f"{path}: raw-text-dir input must be a directory")
    documents: List[Document] = []
    for file in sorted(path.glob("*.txt")):
        raw_text = file.read_text(encoding="utf-8")
        units: Tuple[ParagraphUnit, ...] = ()
        if raw_text.strip():
            units = (ParagraphUnit(file.stem, 0, raw_text.strip()),)
        else:
            logger.warning("%s is empty; loaded without units", file)
        documents.append(Document(file.stem, file.stem, raw_text, units))
    logger.info("loaded %d raw documents from %s", len(documents), path)
    return Corpus(tuple(documents))


def load_corpus(path: Path | str, format: CorpusFormat | str = CorpusFormat.SEGMENTED_JSONL) -> Corpus:
    path = Path(path)
    corpus_format = format if isinstance(format, CorpusFormat) else CorpusFormat.parse(format)
    if not path.exists():
        raise CorpusFormatError(f"{path}: no such file or directory")
    if corpus_format is CorpusFormat.RAW_TEXT_DIR:
        return _load_text_dir(path)
    return _load_jsonl(path)


def corpus_record(document: Document, unit: ParagraphUnit) -> Dict[str, object]:
    record: Dict[str, object] = {"doc_id": unit.doc_id, "unit_id": unit.unit_id, "text": unit.text}
    if document.title != document.doc_id:
        record["title"] = document.title
    record["annotations"] = {
        annotator: {"danger_types": label.sorted_types(), "fear": label.fear}
        for annotator, label in unit.gold.items()
    }
    return record


def write_corpus(corpus: Corpus, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        for document in corpus.documents:
            for unit in document.units:
                handle.write(json.dumps(corpus_record(document, unit), ensure_ascii=False) + "\n")
    return path
