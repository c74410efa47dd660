from __future__ import annotations

from pathlib import Path

import pytest

from dangerlex.corpus import load_corpus
from dangerlex.lexicon import load_lemma_table
from dangerlex.resources import DEFAULT_LEMMA_TABLE, FIXTURE_DIR

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_corpus():
    return load_corpus(FIXTURE_DIR / "corpus.jsonl")


@pytest.fixture(scope="session")
def lemmas():
    return load_lemma_table(DEFAULT_LEMMA_TABLE)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
