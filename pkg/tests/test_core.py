"""Torus points, tropical operations and the tropical metric."""

from fractions import Fraction
from random import Random

import pytest

from tropmean import SampleSet, as_rational, canonicalize, trop_add, trop_dist, trop_scale
from support import rand_point, rand_vector


def test_canonicalize_subtracts_the_first_coordinate():
    assert canonicalize([1, 1, 2]).coords == (0, 0, 1)
    assert canonicalize([0, 0, 0]).coords == (0, 0, 0)


def test_canonicalize_identifies_shifted_vectors():
    a = canonicalize([4, 0, 9])
    b = canonicalize([5, 1, 10])
    assert a == b
    assert a.coords == (0, -4, 5)


def test_canonicalize_is_idempotent():
    rng = Random("core:idempotent")
    for _ in range(50):
        p = rand_point(rng, rng.randint(2, 6))
        assert canonicalize(p.coords) == p


def test_canonicalize_rejects_short_vectors():
    with pytest.raises(ValueError):
        canonicalize([Fraction(1)])


def test_as_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational(3) == Fraction(3)
    assert as_rational(Fraction(2, 7)) == Fraction(2, 7)


def test_trop_add_is_coordinatewise_max():
    assert trop_add((0, 1), (1, 0)) == (1, 1)
    assert trop_add((-3, 0, 0), (0, -6, 0)) == (0, 0, 0)


def test_trop_add_dimension_mismatch():
    with pytest.raises(ValueError):
        trop_add((0, 1), (0, 1, 2))


def test_trop_scale_shifts_every_coordinate():
    assert trop_scale(2, (0, 1, 2)) == (2, 3, 4)
    assert trop_scale(Fraction(-1, 2), (0, 0)) == (Fraction(-1, 2), Fraction(-1, 2))


def test_distance_golden_values():
    assert trop_dist((4, 0, 9), (0, -1, 5)) == 3
    assert trop_dist((0, 0, 0), (0, 1, 2)) == 2
    p = canonicalize([7, -2, 3])
    assert trop_dist(p, p) == 0


def test_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        trop_dist((0, 1), (0, 1, 2))


def test_metric_axioms_on_random_triples():
    rng = Random("core:metric")
    for _ in range(200):
        n = rng.randint(2, 6)
        x, y, z = (rand_vector(rng, n) for _ in range(3))
        dxy = trop_dist(x, y)
        assert dxy >= 0
        assert dxy == trop_dist(y, x)
        assert trop_dist(x, z) <= dxy + trop_dist(y, z)
        assert (dxy == 0) == (canonicalize(x) == canonicalize(y))


def test_distance_ignores_representatives():
    rng = Random("core:shift")
    for _ in range(60):
        n = rng.randint(2, 5)
        x, y = rand_vector(rng, n), rand_vector(rng, n)
        c = Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
        shifted = [v + c for v in x]
        assert trop_dist(shifted, y) == trop_dist(x, y)


def test_sample_set_canonicalizes_rows():
    s = SampleSet.from_rows([(1, 1, 2), (0, 0, 0)])
    assert s[0].coords == (0, 0, 1)
    assert s.m == 2 and s.n == 3
    assert len(s) == 2
    assert [p.coords for p in s] == [(0, 0, 1), (0, 0, 0)]


def test_sample_set_rejects_bad_shapes():
    with pytest.raises(ValueError):
        SampleSet.from_rows([])
    with pytest.raises(ValueError):
        SampleSet.from_rows([(0, 1), (0, 1, 2)])
