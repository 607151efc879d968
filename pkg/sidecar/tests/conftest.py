from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def five_corpus() -> Path:
    return FIXTURES / "five.jsonl"


@pytest.fixture
def triples_file() -> Path:
    return FIXTURES / "triples.jsonl"
