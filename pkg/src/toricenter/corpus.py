"""Seeded random instances for tests, demos and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction

from .arrangement import ToricArrangement, TorusEquation
from .intlinalg import IntMatrix, det, rank
from .scalar import ExactScalar

CORPUS_PRIMES = (2, 3, 5)


def random_scalar(
    rng: random.Random, max_denominator: int = 12, complexified: bool = False
) -> ExactScalar:
    """Turns with denominator ``<= max_denominator``; modulus exponents in {-1, 0, 1}."""
    q = rng.randint(1, max_denominator)
    turns = Fraction(rng.randrange(q), q)
    modulus = {} if complexified else {p: rng.choice((-1, 0, 1)) for p in CORPUS_PRIMES}
    return ExactScalar(modulus, turns)


def random_nonsingular(rng: random.Random, m: int, bound: int = 9) -> IntMatrix:
    while True:
        a = IntMatrix(m, m, [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(m)])
        if det(a):
            return a


def random_arrangement(
    rng: random.Random,
    max_dim: int = 6,
    max_exponent: int = 9,
    max_denominator: int = 12,
    complexified: bool = False,
) -> ToricArrangement:
    """A random arrangement with ``1 <= m <= n <= max_dim`` and full row rank."""
    n = rng.randint(1, max_dim)
    m = rng.randint(1, n)
    while True:
        rows = [[rng.randint(-max_exponent, max_exponent) for _ in range(n)] for _ in range(m)]
        if rank(IntMatrix(m, n, rows)) == m:
            break
    eqs = [TorusEquation(r, random_scalar(rng, max_denominator, complexified)) for r in rows]
    return ToricArrangement(n, eqs)


def random_corpus(count: int, seed: int = 0, **kwargs) -> list[ToricArrangement]:
    rng = random.Random(seed)
    return [random_arrangement(rng, **kwargs) for _ in range(count)]
