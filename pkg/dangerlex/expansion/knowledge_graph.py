"""Knowledge-graph (ConceptNet) neighbours of a word and list expansion.

A word ``A`` admits a candidate ``B`` when the graph holds ``(A, Synonym, B)``
or ``(B, Synonym, A)`` (synonymy is read both ways) or ``(B, IsA, A)``; the
latter keeps the list specific, ``(A, IsA, B)`` would generalise it and is
ignored. Candidates whose term contains a space are discarded.

Three backends feed ``KgClient``: an assertion dump (TSV of relation,
start-uri, end-uri), the public REST API, or nothing at all (cache-only).
Results are cached in memory and, with ``cache_dir``, one file per word.
"""
from __future__ import annotations

import logging
import os
import tempfile
import threading
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple
from urllib.parse import quote, urljoin

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from tqdm import tqdm

from ..config import Settings, load_settings
from ..errors import CacheMissError, DataError, ExternalServiceError, WordListError
from ..http_client import http_get_json
from ..lexicon import Provenance, WordList

logger = logging.getLogger(__name__)

_PAGE_LIMIT = 1000


class KgRelation(str, Enum):
    SYNONYM = "Synonym"
    ISA = "IsA"
    OTHER = "other"

    @classmethod
    def from_uri(cls, uri: str) -> "KgRelation":
        name = uri.rstrip("/").rsplit("/", 1)[-1]
        for member in (cls.SYNONYM, cls.ISA):
            if member.value == name:
                return member
        return cls.OTHER


@dataclass(frozen=True)
class KgEdge:
    start: str
    end: str
    relation: KgRelation
    start_language: str
    end_language: str


def parse_concept_uri(uri: str) -> Tuple[str, str]:
    """``/c/de/blanke_klinge/n`` -> ``("de", "blanke klinge")``."""
    parts = uri.strip().split("/")
    if len(parts) < 4 or parts[1] != "c" or not parts[2] or not parts[3]:
        raise DataError(f"not a concept uri: {uri!r}")
    return parts[2], parts[3].replace("_", " ").lower()


def edge_from_uris(relation: str, start: str, end: str) -> KgEdge:
    start_language, start_term = parse_concept_uri(start)
    end_language, end_term = parse_concept_uri(end)
    return KgEdge(start_term, end_term, KgRelation.from_uri(relation), start_language, end_language)


def candidates_from_edges(word: str, edges: Iterable[KgEdge], language: str = "de") -> List[str]:
    word = word.lower()
    found = set()
    for edge in edges:
        if edge.relation is KgRelation.SYNONYM:
            if edge.start == word and edge.end_language == language:
                found.add(edge.end)
            elif edge.end == word and edge.start_language == language:
                found.add(edge.start)
        elif edge.relation is KgRelation.ISA:
            if edge.end == word and edge.start_language == language:
                found.add(edge.start)
    return sorted(c for c in found if c != word and " " not in c)


def load_dump(path: Path | str, language: str = "de") -> List[KgEdge]:
    """Read assertion rows; five-column exports (assertion uri first) are accepted too."""
    path = Path(path)
    prefix = f"/c/{language}/"
    edges: List[KgEdge] = []
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.rstrip("\n").split("\t")
            if cols[0].startswith("/a/"):
                cols = cols[1:]
            if len(cols) < 3:
                raise DataError(f"{path}:{lineno}: expected relation, start-uri, end-uri")
            relation, start, end = cols[0], cols[1], cols[2]
            if not (start.startswith(prefix) and end.startswith(prefix)):
                continue
            try:
                edge = edge_from_uris(relation, start, end)
            except DataError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
            if edge.relation is not KgRelation.OTHER:
                edges.append(edge)
    logger.info("loaded %d %s Synonym/IsA edges from %s", len(edges), language, path)
    return edges


class _ApiNode(BaseModel):
    model_config = ConfigDict(extra="ignore", populate_by_name=True)

    id: str = Field(alias="@id")


class _ApiEdge(BaseModel):
    model_config = ConfigDict(extra="ignore")

    start: _ApiNode
    end: _ApiNode
    rel: _ApiNode


class _ApiView(BaseModel):
    model_config = ConfigDict(extra="ignore")

    nextPage: Optional[str] = None


class _ApiPage(BaseModel):
    model_config = ConfigDict(extra="ignore")

    edges: List[_ApiEdge] = Field(default_factory=list)
    view: Optional[_ApiView] = None


class KgClient:
    def __init__(
        self,
        settings: Optional[Settings] = None,
        dump: Path | str | None = None,
        api_url: Optional[str] = None,
        cache_dir: Path | str | None = None,
        cache_only: bool = False,
        session: Optional[Any] = None,
    ) -> None:
        self.settings = settings or load_settings()
        self.language = self.settings.conceptnet_language
        self.api_url = (api_url or self.settings.conceptnet_api_url).rstrip("/")
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.cache_only = cache_only
        self.session = session
        self._memory: Dict[str, List[str]] = {}
        self._write_lock = threading.Lock()
        self._index: Optional[Dict[str, List[KgEdge]]] = None
        if dump is not None:
            self._index = defaultdict(list)
            for edge in load_dump(dump, self.language):
                self._index[edge.start].append(edge)
                if edge.end != edge.start:
                    self._index[edge.end].append(edge)
        if self.cache_dir:
            self.cache_dir.mkdir(parents=True, exist_ok=True)

    @property
    def mode(self) -> str:
        if self._index is not None:
            return "dump"
        return "cache-only" if self.cache_only else "live"

    def neighbors(self, word: str) -> List[str]:
        word = word.lower()
        cached = self._memory.get(word)
        if cached is not None:
            return list(cached)
        cached = self._read_cache(word)
        if cached is None:
            if self._index is not None:
                cached = candidates_from_edges(word, self._index.get(word, ()), self.language)
            elif self.cache_only:
                raise CacheMissError(word)
            else:
                cached = candidates_from_edges(word, self._fetch_edges(word), self.language)
            self._write_cache(word, cached)
        self._memory[word] = cached
        return list(cached)

    def _cache_path(self, word: str) -> Optional[Path]:
        if not self.cache_dir:
            return None
        return self.cache_dir / f"{quote(word, safe='')}.txt"

    def _read_cache(self, word: str) -> Optional[List[str]]:
        path = self._cache_path(word)
        if path is None or not path.exists():
            return None
        return [line for line in path.read_text(encoding="utf-8").splitlines() if line]

    def _write_cache(self, word: str, candidates: List[str]) -> None:
        path = self._cache_path(word)
        if path is None:
            return
        payload = "".join(f"{c}\n" for c in candidates)
        with self._write_lock:
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".kg-", suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(payload)
            os.replace(tmp, path)

    def _fetch_edges(self, word: str) -> List[KgEdge]:
        node = f"/c/{self.language}/{word.replace(' ', '_')}"
        edges: List[KgEdge] = []
        for params in (
            {"node": node, "rel": "/r/Synonym", "limit": _PAGE_LIMIT},
            {"end": node, "rel": "/r/IsA", "limit": _PAGE_LIMIT},
        ):
            url: Optional[str] = f"{self.api_url}/query"
            query: Optional[Dict[str, Any]] = params
            while url:
                payload = http_get_json(self.settings, url, params=query, session=self.session)
                try:
                    page = _ApiPage.model_validate(payload)
                except ValidationError as exc:
                    raise ExternalServiceError(f"unexpected knowledge-graph payload for {word!r}: {exc}") from exc
                for item in page.edges:
                    try:
                        edges.append(edge_from_uris(item.rel.id, item.start.id, item.end.id))
                    except DataError:
                        continue
                next_page = page.view.nextPage if page.view else None
                url = urljoin(self.api_url + "/", next_page.lstrip("/")) if next_page else None
                query = None
        logger.debug("fetched %d edges for %r", len(edges), word)
        return edges


def kg_neighbors(client: KgClient, word: str) -> List[str]:
    return client.neighbors(word)


def expand_with_kg(base: WordList, client: KgClient, progress: bool = False) -> WordList:
    if base.provenance is not Provenance.BASE:
        raise WordListError(f"{base.name}: knowledge-graph expansion needs a base list, got {base.provenance.value}")
    words = set(base.words)
    for word in tqdm(sorted(base.words), desc=f"kg {base.name}", disable=not progress, leave=False):
        words.update(candidate.lower() for candidate in client.neighbors(word))
    logger.info("%s: knowledge-graph expansion (%s) %d -> %d words", base.name, client.mode, len(base), len(words))
    return WordList(base.name, Provenance.CONCEPTNET, frozenset(words))
