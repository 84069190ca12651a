"""Projective points and hyperplanes over Q(t): heights, Weil functions, proximity.

Heights are exact integers (degree sums); nothing here is approximate. All
outputs are invariant under scaling a point's coordinates or a form's
coefficients by a common nonzero rational function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence as Seq

from .places import INFINITY, PrimeDivisor, divisor_of, ord_at
from .ratfunc import RatFunc


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[RatFunc, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("a projective point needs a nonzero coordinate")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __str__(self) -> str:
        return "[" + " : ".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[RatFunc, ...]

    def __post_init__(self):
        if not any(self.coeffs):
            raise ValueError("a linear form needs a nonzero coefficient")

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, x: ProjPoint) -> RatFunc:
        if len(self.coeffs) != len(x.coords):
            raise ValueError("dimension mismatch between form and point")
        acc = RatFunc.constant(0)
        for a, c in zip(self.coeffs, x.coords):
            acc = acc + a * c
        return acc

    def __str__(self) -> str:
        return "[" + " : ".join(str(c) for c in self.coeffs) + "]"


@dataclass(frozen=True)
class PlaceSet:
    places: frozenset[PrimeDivisor]

    def __post_init__(self):
        if not self.places:
            raise ValueError("place set must be nonempty")

    @classmethod
    def of(cls, places: Iterable[PrimeDivisor]) -> "PlaceSet":
        return cls(frozenset(places))

    def sorted(self) -> list[PrimeDivisor]:
        return sorted(self.places, key=lambda p: p.sort_key())


def _min_ord(values: Seq[RatFunc], p: PrimeDivisor) -> int:
    """Minimum of ord_p over the nonzero entries (zero entries have ord +inf)."""
    ords = [ord_at(v, p) for v in values if not v.is_zero()]
    if not ords:
        raise ValueError("all values are zero")
    return min(ords)


def e_point(x: ProjPoint, p: PrimeDivisor) -> int:
    return _min_ord(x.coords, p)


def e_form(L: LinearForm, p: PrimeDivisor) -> int:
    return _min_ord(L.coeffs, p)


def _support(values: Seq[RatFunc]) -> set[PrimeDivisor]:
    primes: set[PrimeDivisor] = {INFINITY}
    for v in values:
        if not v.is_zero():
            primes.update(p for p, _ in divisor_of(v).support)
    return primes


def _height(values: Seq[RatFunc]) -> int:
    h = -sum(_min_ord(values, p) * p.degree for p in _support(values))
    assert h >= 0, "height must be nonnegative"
    return h


def height_point(x: ProjPoint) -> int:
    return _height(x.coords)


def height_form(L: LinearForm) -> int:
    return _height(L.coeffs)


def weil(x: ProjPoint, L: LinearForm, p: PrimeDivisor) -> int:
    """Local proximity of x to the hyperplane L = 0 at p; nonnegative."""
    value = L.apply(x)
    if value.is_zero():
        raise ValueError("the point lies on the hyperplane; Weil function undefined")
    lam = (ord_at(value, p) - e_point(x, p) - e_form(L, p)) * p.degree
    assert lam >= 0, "Weil function must be nonnegative"
    return lam


def weil_total(x: ProjPoint, L: LinearForm) -> int:
    """Sum of the Weil function over all places; equals h(x) + h(L) exactly."""
    value = L.apply(x)
    if value.is_zero():
        raise ValueError("the point lies on the hyperplane; Weil function undefined")
    primes = _support(x.coords) | _support(L.coeffs) | _support([value])
    return sum(weil(x, L, p) for p in primes)


def proximity(x: ProjPoint, L: LinearForm, S: PlaceSet) -> int:
    """Sum of the Weil function over the places of S."""
    return sum(weil(x, L, p) for p in S.sorted())
