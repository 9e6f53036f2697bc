"""Exact points of the tropical projective torus and the tropical metric.

Every quantity in this package is a ``fractions.Fraction``; nothing is ever
rounded.  A point of the torus R^n / R(1,...,1) is stored through its unique
representative whose first coordinate is zero, so equality, hashing and
serialization are all well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction

RationalLike = Fraction | int | str


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, 'p/q' strings and decimal strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class TorusPoint:
    """A point of the tropical projective torus in canonical form.

    The stored coordinate tuple always has its first entry equal to zero;
    use :func:`canonicalize` to build a point from an arbitrary
    representative.
    """

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 2:
            raise ValueError("torus points need at least two coordinates")
        if any(not isinstance(c, Fraction) for c in self.coords):
            object.__setattr__(
                self, "coords", tuple(as_rational(c) for c in self.coords)
            )
        if self.coords[0] != 0:
            raise ValueError(
                "canonical representative must have first coordinate 0; "
                "use canonicalize()"
            )

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __repr__(self) -> str:
        return "TorusPoint(" + ", ".join(str(c) for c in self.coords) + ")"


def canonicalize(coords: Sequence[RationalLike]) -> TorusPoint:
    """Return the canonical representative of a raw coordinate vector.

    Subtracts the first coordinate from all entries, which is the unique
    shift by a multiple of (1,...,1) that lands on first-coordinate zero.
    """
    vals = [as_rational(c) for c in coords]
    if len(vals) < 2:
        raise ValueError("need at least two coordinates")
    first = vals[0]
    return TorusPoint(tuple(v - first for v in vals))


def trop_add(x: Sequence[RationalLike], y: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """Coordinatewise max of two raw vectors (tropical addition)."""
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return tuple(max(as_rational(a), as_rational(b)) for a, b in zip(x, y))


def trop_scale(lam: RationalLike, x: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """Add the scalar lam to every coordinate (tropical scalar action)."""
    s = as_rational(lam)
    return tuple(s + as_rational(a) for a in x)


def trop_dist(x: Sequence[RationalLike], y: Sequence[RationalLike]) -> Fraction:
    """Tropical distance max_i(x_i - y_i) - min_i(x_i - y_i).

    The value does not depend on which representatives of the torus points
    are passed in, since shifting either argument by a constant vector
    shifts every difference by the same amount.
    """
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    diffs = [as_rational(a) - as_rational(b) for a, b in zip(x, y)]
    return max(diffs) - min(diffs)


@dataclass(frozen=True)
class SampleSet:
    """A nonempty finite configuration of torus points of equal dimension."""

    points: tuple[TorusPoint, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("sample set must be nonempty")
        n = self.points[0].dim
        if any(p.dim != n for p in self.points):
            raise ValueError("all sample points must share one dimension")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[RationalLike]]) -> "SampleSet":
        return cls(tuple(canonicalize(row) for row in rows))

    @property
    def n(self) -> int:
        """Ambient coordinate count."""
        return self.points[0].dim

    @property
    def m(self) -> int:
        """Number of samples."""
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[TorusPoint]:
        return iter(self.points)

    def __getitem__(self, j: int) -> TorusPoint:
        return self.points[j]
