import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
REPO_ROOT = TESTS_DIR.parent
GOLDENS = TESTS_DIR / "goldens"
FIXTURES = REPO_ROOT / "fixtures"

# Make tests/oracles.py importable as a plain module.
sys.path.insert(0, str(TESTS_DIR))

FIXTURE_SEED = 7
FIXTURE_CL_NAME = "Velsora"


@pytest.fixture(scope="session")
def goldens_dir() -> Path:
    return GOLDENS


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def spa_map():
    from cipherlang import cipher

    return cipher.build_map("spa", FIXTURE_SEED, cl_name=FIXTURE_CL_NAME)


@pytest.fixture(scope="session")
def spa_samples():
    from cipherlang.materials import load_samples

    return load_samples(FIXTURES / "spa-eng" / "testset.jsonl")


@pytest.fixture(scope="session")
def spa_bundle_to_eng(spa_map):
    from cipherlang.cipher import TO_ENGLISH, cipher_bundle
    from cipherlang.materials import load_bundle

    plain = load_bundle(FIXTURES / "spa-eng", "spa", TO_ENGLISH)
    return cipher_bundle(spa_map, plain)


@pytest.fixture(scope="session")
def spa_bundle_from_eng(spa_map):
    from cipherlang.cipher import FROM_ENGLISH, cipher_bundle
    from cipherlang.materials import load_bundle

    plain = load_bundle(
        FIXTURES / "spa-eng", "spa", FROM_ENGLISH, pivot_language="fra"
    )
    return cipher_bundle(spa_map, plain)
