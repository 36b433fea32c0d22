"""Rank-2 lattice points, the skew form, and slope ordering."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import itemgetter


class LatticeError(ValueError):
    pass


def exact(c) -> Fraction:
    """Fraction(c), refusing floats so that inexact values never enter the engine."""
    if isinstance(c, float):
        raise TypeError(f"expected an exact rational, got float {c!r}")
    return Fraction(c)


class LatticeVector(tuple):
    """A point ``a1*e1 + a2*e2`` of the positive cone N+.

    Hashes and compares like the plain tuple ``(a1, a2)``, so it can be mixed
    freely with tuple keys in series dictionaries.
    """

    __slots__ = ()

    def __new__(cls, a1, a2):
        if isinstance(a1, bool) or isinstance(a2, bool):
            raise LatticeError("lattice coordinates must be integers")
        a1, a2 = int(a1), int(a2)
        if a1 < 0 or a2 < 0:
            raise LatticeError(f"({a1},{a2}) has a negative coordinate")
        if a1 + a2 == 0:
            raise LatticeError("(0,0) is not in N+")
        return tuple.__new__(cls, (a1, a2))

    def __getnewargs__(self):
        return (self[0], self[1])

    a1 = property(itemgetter(0))
    a2 = property(itemgetter(1))

    @property
    def degree(self) -> int:
        return self[0] + self[1]

    @property
    def slope(self) -> Fraction:
        """Position along the cone, 0 at e1 and 1 at e2 (exact, monotone in angle)."""
        return Fraction(self[1], self[0] + self[1])

    def is_primitive(self) -> bool:
        return gcd(self[0], self[1]) == 1

    def primitive(self) -> LatticeVector:
        g = gcd(self[0], self[1])
        return LatticeVector(self[0] // g, self[1] // g)

    def __add__(self, other):
        return LatticeVector(self[0] + other[0], self[1] + other[1])

    def __mul__(self, k):
        return LatticeVector(k * self[0], k * self[1])

    __rmul__ = __mul__

    def __repr__(self):
        return f"LatticeVector({self[0]}, {self[1]})"

    def __str__(self):
        return f"[{self[0]},{self[1]}]"


def vec(n) -> LatticeVector:
    if isinstance(n, LatticeVector):
        return n
    a1, a2 = n
    return LatticeVector(a1, a2)


E1 = LatticeVector(1, 0)
E2 = LatticeVector(0, 1)


def cross(n, m) -> int:
    return n[0] * m[1] - n[1] * m[0]


@dataclass(frozen=True)
class SkewForm:
    """The skew form determined by ``lam = {e1, e2}``."""

    lam: Fraction = Fraction(-1)

    def __post_init__(self):
        object.__setattr__(self, "lam", exact(self.lam))

    def __call__(self, n, m) -> Fraction:
        return self.lam * (n[0] * m[1] - n[1] * m[0])


DEFAULT_FORM = SkewForm(Fraction(-1))


def skew(form: SkewForm, n, m) -> Fraction:
    return form(n, m)


def check_cutoff(D) -> int:
    if isinstance(D, bool) or int(D) != D or D < 1:
        raise LatticeError(f"truncation degree must be a positive integer, got {D!r}")
    return int(D)


def in_ideal(n, D: int) -> bool:
    """Membership in the degree-cutoff ideal L_D = {degree > D}."""
    return n[0] + n[1] > D


class SlopeOrder(enum.Enum):
    PRECEDES = "precedes"
    PARALLEL = "parallel"
    FOLLOWS = "follows"


class ProductOrder(enum.Enum):
    ORDERED = "ordered"
    ANTI_ORDERED = "anti-ordered"
    NEITHER = "neither"


def slope_order(n, m) -> SlopeOrder:
    """Compare directions: PRECEDES means ``n`` lies strictly closer to e1."""
    c = cross(n, m)
    if c > 0:
        return SlopeOrder.PRECEDES
    if c < 0:
        return SlopeOrder.FOLLOWS
    return SlopeOrder.PARALLEL


def classify_product(vectors) -> ProductOrder:
    vectors = list(vectors)
    if not vectors:
        raise LatticeError("cannot classify an empty product")
    orders = {slope_order(a, b) for a, b in zip(vectors, vectors[1:])}
    if orders <= {SlopeOrder.PRECEDES, SlopeOrder.PARALLEL}:
        return ProductOrder.ORDERED
    if orders <= {SlopeOrder.FOLLOWS, SlopeOrder.PARALLEL}:
        return ProductOrder.ANTI_ORDERED
    return ProductOrder.NEITHER


def is_anti_ordered(vectors) -> bool:
    vectors = list(vectors)
    return all(slope_order(a, b) is not SlopeOrder.PRECEDES for a, b in zip(vectors, vectors[1:]))


def graded_key(n):
    """Graded order: by degree, then from the e1 side to the e2 side."""
    return (n[0] + n[1], -n[0])


def points_up_to(D: int):
    """All points of N+ with degree <= D, in graded order."""
    return [LatticeVector(d - j, j) for d in range(1, D + 1) for j in range(d + 1)]
