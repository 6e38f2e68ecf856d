import pytest

from toricenter import ExactScalar, ToricArrangement
from toricenter.corpus import random_corpus

CORPUS_SEED = 20261014


def minus_one():
    return ExactScalar.from_json("-1")


@pytest.fixture
def single_eq():
    """z1^2 z2^4 = -1 in (C*)^2."""
    return ToricArrangement.from_rows([[2, 4]], [minus_one()])


@pytest.fixture
def two_eq():
    """z1 z2^2 = -1, z1 z2 = 1 in (C*)^2."""
    return ToricArrangement.from_rows([[1, 2], [1, 1]], [minus_one(), ExactScalar()])


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(200, seed=CORPUS_SEED)
