"""The bundled synthetic corpus: 20 German paragraphs, six built around danger words."""
from __future__ import annotations

import json
import logging
import shutil
from pathlib import Path
from typing import Any, Dict, List

from .lexicon import Provenance, load_wordlist_dir, write_wordlist
from .resources import DEFAULT_LEMMA_TABLE, DEFAULT_STOPWORDS, DEFAULT_WORDLIST_DIR, FIXTURE_DIR

logger = logging.getLogger(__name__)

FIXTURE_FILES = ("corpus.jsonl", "manifest.json", "vectors.txt", "conceptnet_dump.tsv")

FIXTURE_CONFIG = """\
# dangerlex pipeline config for the bundled synthetic corpus
CORPUS_PATH=corpus.jsonl
CORPUS_FORMAT=segmented-jsonl
WORDLIST_DIR=wordlists
LEMMA_TABLE=lemmas_de.tsv
STOPWORDS=stopwords_de.txt
VECTORS_PATH=vectors.txt
KG_DUMP=conceptnet_dump.tsv
EXPANSION_K=3
DETECTION_SCOPE=global
GOLD_POLICY=first-annotator
TOP_N=10
OUTPUT_DIR=out
"""


def fixture_manifest() -> Dict[str, Any]:
    return json.loads((FIXTURE_DIR / "manifest.json").read_text(encoding="utf-8"))


def planted_units() -> List[tuple]:
    return [(item["doc_id"], int(item["unit_id"])) for item in fixture_manifest()["planted"]]


def write_fixtures(target: Path | str) -> Path:
    """Copy corpus, vectors, dump, lists, lemma table and stopwords; write ``pipeline.env``."""
    target = Path(target)
    target.mkdir(parents=True, exist_ok=True)
    for name in FIXTURE_FILES:
        shutil.copyfile(FIXTURE_DIR / name, target / name)
    shutil.copyfile(DEFAULT_LEMMA_TABLE, target / "lemmas_de.tsv")
    shutil.copyfile(DEFAULT_STOPWORDS, target / "stopwords_de.txt")
    for wordlist in load_wordlist_dir(DEFAULT_WORDLIST_DIR, Provenance.BASE).values():
        write_wordlist(wordlist, target / "wordlists" / wordlist.filename)
    (target / "pipeline.env").write_text(FIXTURE_CONFIG, encoding="utf-8")
    logger.info("fixtures written to %s", target)
    return target / "pipeline.env"
