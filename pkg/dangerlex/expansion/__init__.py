from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Mapping, Optional

from ..errors import UsageError
from ..lexicon import LemmaTable, Provenance, WordList, load_wordlist_dir, write_wordlist
from .embeddings import EmbeddingStore, expand_with_embeddings, load_vectors, most_similar
from .knowledge_graph import KgClient, KgEdge, KgRelation, expand_with_kg, kg_neighbors, load_dump

logger = logging.getLogger(__name__)

__all__ = [
    "EmbeddingStore",
    "KgClient",
    "KgEdge",
    "KgRelation",
    "expand_directory",
    "expand_list",
    "expand_with_embeddings",
    "expand_with_kg",
    "kg_neighbors",
    "load_dump",
    "load_vectors",
    "most_similar",
]


def expand_list(
    base: WordList,
    method: str,
    store: Optional[EmbeddingStore] = None,
    lemmas: Optional[LemmaTable] = None,
    client: Optional[KgClient] = None,
    k: int = 50,
    progress: bool = False,
    header: Optional[Mapping[str, str]] = None,
) -> WordList:
    if method == "embeddings":
        if store is None:
            raise UsageError("embedding expansion needs a vector file (--vectors)")
        return expand_with_embeddings(base, store, lemmas or LemmaTable(), k)
    if method == "kg":
        if client is None:
            raise UsageError("knowledge-graph expansion needs --dump, --api or a cache directory")
        return expand_with_kg(base, client, progress=progress)
    raise UsageError(f"unknown expansion method {method!r} (expected embeddings or kg)")


def expand_directory(
    base_dir: Path | str,
    out_dir: Path | str,
    method: str,
    store: Optional[EmbeddingStore] = None,
    lemmas: Optional[LemmaTable] = None,
    client: Optional[KgClient] = None,
    k: int = 50,
    progress: bool = False,
    header: Optional[Mapping[str, str]] = None,
) -> Dict[str, WordList]:
    """Expand every ``*.base.txt`` list of ``base_dir`` into ``out_dir``."""
    expanded: Dict[str, WordList] = {}
    for name, base in load_wordlist_dir(base_dir, Provenance.BASE).items():
        result = expand_list(base, method, store=store, lemmas=lemmas, client=client, k=k, progress=progress)
        write_wordlist(result, Path(out_dir) / result.filename, header)
        expanded[name] = result
    logger.info("expanded %d lists with %s into %s", len(expanded), method, out_dir)
    return expanded
