"""Shared generators for the randomized suites.

Randomness always comes from a Random seeded with a short string, so every
run of the tests sees the same instances on every platform and process.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from tropmean import PolytropeMatrix, SampleSet, canonicalize
from tropmean.core import TorusPoint

DENOMS = (1, 2, 3, 5)


def rand_fraction(rng: Random, span: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice(DENOMS))


def rand_vector(rng: Random, n: int, span: int = 12) -> list[Fraction]:
    return [rand_fraction(rng, span) for _ in range(n)]


def rand_point(rng: Random, n: int, span: int = 12) -> TorusPoint:
    return canonicalize(rand_vector(rng, n, span))


def int_sample(rng: Random, n: int, m: int, span: int | None = None) -> SampleSet:
    """Sample with small integer coordinates, the oracle-friendly shape."""
    s = 3 * n if span is None else span
    return SampleSet.from_rows(
        [[Fraction(rng.randint(-s, s)) for _ in range(n)] for _ in range(m)]
    )


def rand_sample(rng: Random, n: int, m: int, span: int = 12) -> SampleSet:
    return SampleSet.from_rows([rand_vector(rng, n, span) for _ in range(m)])


def nonpositive_matrix(rng: Random, n: int, span: int = 12) -> PolytropeMatrix:
    """Random constraint matrix with zero diagonal and entries <= 0.

    Nonpositive off-diagonals rule out positive cycles, so Q is never
    empty, and every entry is finite, so Q is bounded.
    """
    rows = [
        [
            Fraction(0)
            if i == j
            else Fraction(rng.randint(-span, 0), rng.choice((1, 2)))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return PolytropeMatrix.from_rows(rows)
