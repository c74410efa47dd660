from __future__ import annotations

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent / "data"
DEFAULT_STOPWORDS = DATA_DIR / "stopwords_de.txt"
DEFAULT_LEMMA_TABLE = DATA_DIR / "lemmas_de.tsv"
DEFAULT_WORDLIST_DIR = DATA_DIR / "wordlists"
FIXTURE_DIR = DATA_DIR / "fixture"
