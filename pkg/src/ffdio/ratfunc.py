"""Exact univariate polynomial and rational-function arithmetic over Q.

Everything here is immutable and exact: coefficients are `fractions.Fraction`,
equality is structural, and no floating point is used anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rat = Fraction

Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an integer or Fraction, got {type(x).__name__}")


class Poly:
    """Dense polynomial in t over Q: coeffs[i] is the coefficient of t^i.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls([_frac(c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        lc = self.leading()
        if lc == 1:
            return self
        return Poly(c / lc for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.leading()
        if len(rem) - 1 < d:
            return ZERO, self
        quo = [Fraction(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                q = c / lc
                quo[i - d] = q
                for j, oc in enumerate(other.coeffs):
                    rem[i - d + j] -= q * oc
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def evaluate(self, x: Scalar) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = "t" if e == 1 else f"t^{e}"
            else:
                body = f"{mag}*t" if e == 1 else f"{mag}*t^{e}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Poly")


ZERO = Poly()
ONE = Poly([1])
T = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; raises on gcd(0, 0).

    Computed over the integers after clearing denominators; plain Euclid over
    Q suffers severe coefficient blowup at moderate degrees.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    from math import lcm
    from sympy.polys.domains import ZZ
    from sympy.polys.euclidtools import dup_gcd

    def as_ints(p: Poly):
        den = lcm(*(c.denominator for c in p.coeffs))
        return [ZZ(int(c * den)) for c in reversed(p.coeffs)]

    g = dup_gcd(as_ints(a), as_ints(b), ZZ)
    return Poly(reversed([int(c) for c in g])).monic()


def multiplicity(f: Poly, p: Poly) -> int:
    """Largest m with p^m dividing f; f must be nonzero."""
    if f.is_zero():
        raise ValueError("multiplicity in the zero polynomial is undefined")
    if p.coeffs == T.coeffs:
        m = 0
        while m <= f.degree and f.coeffs[m] == 0:
            m += 1
        return m
    m = 0
    q, r = divmod(f, p)
    while r.is_zero():
        m += 1
        f = q
        q, r = divmod(f, p)
    return m


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^mult) == the factored polynomial, exactly."""

    unit: Fraction
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        acc = Poly.constant(self.unit)
        for f, m in self.factors:
            acc = acc * f ** m
        return acc


def _degree_multiset_mod(coeffs_int: list[int], p: int):
    """Multiset of irreducible factor degrees mod p, or None if p is unusable."""
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import (
        gf_ddf_zassenhaus,
        gf_from_int_poly,
        gf_monic,
        gf_sqf_p,
    )

    g = gf_from_int_poly(coeffs_int, p)
    if len(g) != len(coeffs_int):
        return None  # leading coefficient vanished mod p
    _, g = gf_monic(g, p, ZZ)
    if not gf_sqf_p(g, p, ZZ):
        return None
    degrees = []
    for part, d in gf_ddf_zassenhaus(g, p, ZZ):
        degrees.extend([d] * ((len(part) - 1) // d))
    return degrees


_PRETEST_PRIMES = (3, 5, 7, 11, 13, 17)


def _provably_irreducible(coeffs_int: list[int]) -> bool:
    """Quick irreducibility certificate from factor-degree patterns mod small primes.

    The subset sums of the mod-p factor-degree multiset bound the possible
    degrees of rational factors; if their intersection over a few good primes
    is {0, n} the polynomial is irreducible over Q. One-sided: False means
    "unknown", never "reducible".
    """
    n = len(coeffs_int) - 1
    if n <= 1:
        return n == 1
    if coeffs_int[-1] == 0:
        return False  # divisible by t
    possible = None
    used = 0
    for p in _PRETEST_PRIMES:
        degrees = _degree_multiset_mod(coeffs_int, p)
        if degrees is None:
            continue
        sums = {0}
        for d in degrees:
            sums |= {s + d for s in sums}
        possible = sums if possible is None else possible & sums
        if possible == {0, n}:
            return True
        used += 1
        if used >= 3:
            break
    return False


@lru_cache(maxsize=4096)
def factorize(p: Poly) -> Factorization:
    """Factor into a rational unit times monic irreducible polynomials over Q.

    Factors are sorted by (degree, coefficient tuple); the result is certified
    by exact re-multiplication before being returned.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return Factorization(p.coeffs[0], ())

    # Clear denominators: p = (c/d) * F with F a primitive integer polynomial.
    from math import gcd as igcd, lcm

    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    content = 0
    for c in ints:
        content = igcd(content, abs(c))
    ints = [c // content for c in ints]
    unit = Fraction(content, den)

    coeffs_desc = list(reversed(ints))  # highest degree first, for sympy
    if _provably_irreducible(coeffs_desc):
        pairs = [(ints, 1)]
    else:
        from sympy.polys.domains import ZZ
        from sympy.polys.factortools import dup_factor_list

        lead, sym_factors = dup_factor_list([ZZ(c) for c in coeffs_desc], ZZ)
        unit *= Fraction(int(lead))
        pairs = [(list(reversed([int(c) for c in f])), m) for f, m in sym_factors]

    factors = []
    for cs, mult in pairs:
        poly = Poly(cs)
        lc = poly.leading()
        unit *= lc ** mult
        factors.append((poly.monic(), mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))

    result = Factorization(unit, tuple(factors))
    if result.expand() != p:
        raise AssertionError(f"factorization certificate failed for {p}")
    return result


class RatFunc:
    """Reduced rational function num/den over Q with monic denominator.

    The zero element is 0/1; arithmetic coerces ints, Fractions and Polys.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[Poly, Scalar], den: Union[Poly, Scalar] = ONE):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if num.is_zero():
            num, den = ZERO, ONE
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.leading()
            if lc != 1:
                num = Poly(c / lc for c in num.coeffs)
                den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def constant(cls, c: Scalar) -> "RatFunc":
        return cls(Poly.constant(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        return self + (-_require_ratfunc(other))

    def __rsub__(self, other) -> "RatFunc":
        return _require_ratfunc(other) + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _require_ratfunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _require_ratfunc(other) / self

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.constant(x)
    if isinstance(x, Poly):
        return RatFunc(x)
    return NotImplemented


def _require_ratfunc(x) -> RatFunc:
    r = _as_ratfunc(x)
    if r is NotImplemented:
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")
    return r


RF_ZERO = RatFunc(ZERO)
RF_ONE = RatFunc(ONE)
RF_T = RatFunc(T)
