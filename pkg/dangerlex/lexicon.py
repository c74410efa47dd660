"""Word lists per danger/fear type, the merged Danger list and lemma matching."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence

import pandas as pd

from .errors import WordListError
from .segmentation import tokenize

logger = logging.getLogger(__name__)

DANGER_LIST = "Danger"
FEAR_LIST = "Fear"


class Provenance(str, Enum):
    BASE = "base"
    EMBEDDING = "embedding"
    CONCEPTNET = "conceptnet"

    @classmethod
    def parse(cls, raw: "Provenance | str") -> "Provenance":
        if isinstance(raw, Provenance):
            return raw
        try:
            return cls(raw.strip().lower())
        except ValueError as exc:
            raise WordListError(f"unknown provenance {raw!r} (expected base, embedding or conceptnet)") from exc


def _has_whitespace(word: str) -> bool:
    return any(ch.isspace() for ch in word)


@dataclass(frozen=True)
class WordList:
    name: str
    provenance: Provenance
    words: FrozenSet[str] = frozenset()

    def __post_init__(self) -> None:
        bad = sorted(w for w in self.words if _has_whitespace(w) or not w)
        if bad:
            raise WordListError(f"word list {self.name!r} has entries with whitespace: {bad[:5]}")
        object.__setattr__(self, "words", frozenset(w.lower() for w in self.words))
        object.__setattr__(self, "provenance", Provenance.parse(self.provenance))

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @property
    def filename(self) -> str:
        return f"{self.name}.{self.provenance.value}.txt"


@dataclass(frozen=True)
class LemmaTable:
    mapping: Mapping[str, str] = field(default_factory=dict)

    def lookup(self, surface: str) -> str:
        key = surface.lower()
        return self.mapping.get(key, key)

    def __len__(self) -> int:
        return len(self.mapping)


def _split_filename(path: Path) -> tuple:
    parts = path.name.split(".")
    if len(parts) >= 3 and parts[-1] == "txt":
        return ".".join(parts[:-2]), parts[-2]
    return path.stem, Provenance.BASE.value


def load_wordlist(
    path: Path | str,
    name: Optional[str] = None,
    provenance: Provenance | str | None = None,
) -> WordList:
    path = Path(path)
    inferred_name, inferred_provenance = _split_filename(path)
    words = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if _has_whitespace(line):
            raise WordListError(f"{path}:{lineno}: entry {line!r} contains whitespace (lists are single-word)")
        words.add(line.lower())
    return WordList(name or inferred_name, Provenance.parse(provenance or inferred_provenance), frozenset(words))


def write_wordlist(wordlist: WordList, target: Path | str, header: Optional[Mapping[str, str]] = None) -> Path:
    target = Path(target)
    path = target / wordlist.filename if target.is_dir() else target
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {key}: {value}" for key, value in (header or {}).items()]
    lines.append(f"# {wordlist.name} ({wordlist.provenance.value}), {len(wordlist)} words")
    lines.extend(sorted(wordlist.words))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def merge_danger_lists(sublists: Sequence[WordList], name: str = DANGER_LIST) -> WordList:
    if not sublists:
        raise WordListError("no danger sublists to merge")
    provenances = {wl.provenance for wl in sublists}
    if len(provenances) > 1:
        found = ", ".join(sorted(p.value for p in provenances))
        raise WordListError(f"cannot merge lists of mixed provenance ({found})")
    merged: FrozenSet[str] = frozenset().union(*(wl.words for wl in sublists))
    return WordList(name, sublists[0].provenance, merged)


def load_wordlist_dir(directory: Path | str, provenance: Provenance | str = Provenance.BASE) -> Dict[str, WordList]:
    directory = Path(directory)
    provenance = Provenance.parse(provenance)
    lists: Dict[str, WordList] = {}
    for path in sorted(directory.glob(f"*.{provenance.value}.txt")):
        wordlist = load_wordlist(path)
        if wordlist.name == DANGER_LIST:
            continue
        lists[wordlist.name] = wordlist
    logger.debug("loaded %d %s lists from %s", len(lists), provenance.value, directory)
    return lists


def available_provenances(directory: Path | str) -> List[Provenance]:
    directory = Path(directory)
    return [p for p in Provenance if any(directory.glob(f"*.{p.value}.txt"))]


def detection_lists(directory: Path | str, provenance: Provenance | str = Provenance.BASE) -> Dict[str, WordList]:
    """The two detection targets: the merged Danger list and the Fear list."""
    lists = load_wordlist_dir(directory, provenance)
    targets: Dict[str, WordList] = {}
    sublists = [wl for name, wl in lists.items() if name != FEAR_LIST]
    if sublists:
        targets[DANGER_LIST] = merge_danger_lists(sublists)
    if FEAR_LIST in lists:
        targets[FEAR_LIST] = lists[FEAR_LIST]
    return targets


def is_expansion_of(expanded: WordList, base: WordList) -> bool:
    return expanded.words >= base.words


def wordlist_statistics(directory: Path | str) -> pd.DataFrame:
    rows: Dict[str, Dict[str, int]] = {}
    for provenance in available_provenances(directory):
        sizes = {name: len(wl) for name, wl in load_wordlist_dir(directory, provenance).items()}
        sizes.update({name: len(wl) for name, wl in detection_lists(directory, provenance).items()})
        for name, size in sizes.items():
            rows.setdefault(name, {})[provenance.value] = size
    order = [n for n in (FEAR_LIST, DANGER_LIST) if n in rows]
    order += sorted(n for n in rows if n not in {FEAR_LIST, DANGER_LIST})
    frame = pd.DataFrame.from_dict(rows, orient="index").reindex(order)
    frame = frame.reindex(columns=[p.value for p in Provenance if p.value in frame.columns])
    frame.index.name = "type"
    return frame.astype("Int64")


def load_lemma_table(path: Path | str) -> LemmaTable:
    path = Path(path)
    mapping: Dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise WordListError(f"{path}:{lineno}: expected 'surface<TAB>lemma', got {raw!r}")
        surface, lemma = parts[0].strip().lower(), parts[1].strip().lower()
        if _has_whitespace(lemma):
            raise WordListError(f"{path}:{lineno}: lemma {lemma!r} contains whitespace")
        mapping[surface] = lemma
    logger.debug("loaded %d lemma entries from %s", len(mapping), path)
    return LemmaTable(mapping)


def lemmatize_unit(text: str, table: LemmaTable) -> Counter:
    return Counter(table.lookup(tok.token) for tok in tokenize(text))

