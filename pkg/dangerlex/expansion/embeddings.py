from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import EmbeddingFormatError, WordListError
from ..lexicon import LemmaTable, Provenance, WordList

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EmbeddingStore:
    vocabulary: Tuple[str, ...]
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        vectors = np.array(self.vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[0] != len(self.vocabulary):
            raise EmbeddingFormatError(
                f"vector matrix shape {vectors.shape} does not match {len(self.vocabulary)} words"
            )
        index: Dict[str, int] = {}
        folded: Dict[str, int] = {}
        for i, word in enumerate(self.vocabulary):
            if word in index:
                raise EmbeddingFormatError(f"duplicate vocabulary entry {word!r}")
            index[word] = i
            folded.setdefault(word.lower(), i)
        norms = np.linalg.norm(vectors, axis=1)
        valid = norms > 0
        unit = np.zeros_like(vectors)
        unit[valid] = vectors[valid] / norms[valid, None]
        for array in (vectors, unit, valid):
            array.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_folded", folded)
        object.__setattr__(self, "_unit", unit)
        object.__setattr__(self, "_valid", valid)
        object.__setattr__(self, "_words", np.asarray(self.vocabulary, dtype=str))

    @classmethod
    def from_mapping(cls, vectors: Mapping[str, Sequence[float]]) -> "EmbeddingStore":
        words = tuple(vectors)
        return cls(words, np.asarray([vectors[w] for w in words], dtype=np.float64).reshape(len(words), -1))

    def __contains__(self, word: object) -> bool:
        return word in self._index

    def __len__(self) -> int:
        return len(self.vocabulary)

    def resolve(self, word: str) -> Optional[str]:
        """Exact entry, else the first entry that matches case-insensitively."""
        if word in self._index:
            return word
        i = self._folded.get(word.lower())
        return None if i is None else self.vocabulary[i]

    def cosine(self, a: str, b: str) -> float:
        i, j = self._index[a], self._index[b]
        if not (self._valid[i] and self._valid[j]):
            return math.nan
        return float(self._unit[i] @ self._unit[j])

    def most_similar(self, word: str, k: int = 50) -> List[Tuple[str, float]]:
        if k < 1:
            raise ValueError("k must be >= 1")
        i = self._index.get(word)
        if i is None or not self._valid[i]:
            return []
        sims = self._unit @ self._unit[i]
        keep = self._valid.copy()
        keep[i] = False
        order = np.lexsort((self._words, -sims))
        ranked = [j for j in order if keep[j]][:k]
        return [(self.vocabulary[j], float(sims[j])) for j in ranked]


def load_vectors(path: Path | str) -> EmbeddingStore:
    """Read the textual vector format: ``count dim`` header, then ``word v1 .. vd``."""
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        header = handle.readline().split()
        if len(header) != 2 or not all(part.isdigit() for part in header):
            raise EmbeddingFormatError(f"{path}:1: expected header 'count dim', got {' '.join(header)!r}")
        count, dim = int(header[0]), int(header[1])
        words: List[str] = []
        matrix = np.zeros((count, dim), dtype=np.float64)
        for lineno, line in enumerate(handle, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(words) >= count:
                raise EmbeddingFormatError(f"{path}:{lineno}: more than the {count} vectors declared")
            if len(parts) != dim + 1:
                raise EmbeddingFormatError(f"{path}:{lineno}: expected {dim} values, got {len(parts) - 1}")
            try:
                matrix[len(words)] = np.asarray(parts[1:], dtype=np.float64)
            except ValueError as exc:
                raise EmbeddingFormatError(f"{path}:{lineno}: non-numeric vector value") from exc
            words.append(parts[0])
    if len(words) != count:
        raise EmbeddingFormatError(f"{path}: header declares {count} vectors, found {len(words)}")
    logger.info("loaded %d vectors (dim %d) from %s", count, dim, path)
    return EmbeddingStore(tuple(words), matrix)


def most_similar(store: EmbeddingStore, word: str, k: int = 50) -> List[Tuple[str, float]]:
    return store.most_similar(word, k)


def expand_with_embeddings(base: WordList, store: EmbeddingStore, lemmas: LemmaTable, k: int = 50) -> WordList:
    if base.provenance is not Provenance.BASE:
        raise WordListError(f"{base.name}: embedding expansion needs a base list, got {base.provenance.value}")
    words = set(base.words)
    for word in sorted(base.words):
        entry = store.resolve(word)
        if entry is None:
            logger.debug("%s: %r not in vector vocabulary", base.name, word)
            continue
        for neighbour, _ in store.most_similar(entry, k):
            lemma = lemmas.lookup(neighbour.lower())
            if lemma and not any(ch.isspace() for ch in lemma):
                words.add(lemma)
    logger.info("%s: embedding expansion %d -> %d words", base.name, len(base), len(words))
    return WordList(base.name, Provenance.EMBEDDING, frozenset(words))
