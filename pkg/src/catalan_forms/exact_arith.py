"""Exact scalars: rationals, quarter-integers, lcm(1..N) and 2-adic orders.

Rationals are plain :class:`fractions.Fraction` objects (always reduced, with a
positive denominator); the alias ``BigRat`` is kept for readability.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from math import factorial, isqrt, prod
from numbers import Rational

BigRat = Fraction


@total_ordering
class QuarterInt:
    """The exact number ``quadruple / 4`` for an integer ``quadruple``.

    Kept distinct from Fraction so that pole bookkeeping (which residue class
    mod 1 a pole sits in) is carried by the type.
    """

    __slots__ = ("quadruple",)

    def __init__(self, quadruple: int):
        if not isinstance(quadruple, int):
            raise TypeError(f"quadruple value must be int, got {type(quadruple).__name__}")
        object.__setattr__(self, "quadruple", quadruple)

    def __setattr__(self, name, value):
        raise AttributeError("QuarterInt is immutable")

    @classmethod
    def of(cls, x) -> "QuarterInt":
        """Convert an int, Fraction or QuarterInt; raises if 4x is not integral."""
        if isinstance(x, QuarterInt):
            return x
        q = Fraction(x) * 4
        if q.denominator != 1:
            raise ValueError(f"{x} is not a multiple of 1/4")
        return cls(q.numerator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.quadruple, 4)

    @property
    def is_integer(self) -> bool:
        return self.quadruple % 4 == 0

    @property
    def is_half_odd(self) -> bool:
        return self.quadruple % 4 == 2

    @property
    def is_quarter_odd(self) -> bool:
        """True for points of Z + 1/4 or Z + 3/4."""
        return self.quadruple % 2 == 1

    def __add__(self, other):
        if isinstance(other, (QuarterInt, int)):
            return QuarterInt(self.quadruple + QuarterInt.of(other).quadruple)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (QuarterInt, int)):
            return QuarterInt(self.quadruple - QuarterInt.of(other).quadruple)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return QuarterInt(4 * other - self.quadruple)
        return NotImplemented

    def __neg__(self):
        return QuarterInt(-self.quadruple)

    def __eq__(self, other):
        if isinstance(other, QuarterInt):
            return self.quadruple == other.quadruple
        if isinstance(other, (int, Rational)):
            return self.as_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, QuarterInt):
            return self.quadruple < other.quadruple
        if isinstance(other, (int, Rational)):
            return self.as_fraction() < other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __repr__(self):
        return f"QuarterInt({self.as_fraction()})"

    def __str__(self):
        return str(self.as_fraction())


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=None)
def lcm_valuations(n: int) -> dict[int, int]:
    """Prime -> exponent in lcm(1, ..., n): the largest e with p**e <= n."""
    if n < 1:
        raise ValueError("lcm_upto needs N >= 1")
    out = {}
    for p in _primes_upto(n):
        e, pe = 1, p
        while pe * p <= n:
            pe *= p
            e += 1
        out[p] = e
    return out


@lru_cache(maxsize=1024)
def lcm_upto(n: int) -> int:
    """D_N = lcm(1, 2, ..., N), assembled from maximal prime powers <= N."""
    if n < 1:
        raise ValueError("lcm_upto needs N >= 1")
    return prod(p**e for p, e in lcm_valuations(n).items())


def lcm_upto_or_one(n: int) -> int:
    """D_N with the convention D_N = 1 for N <= 0 (needed for D_{2n-1} at n = 0)."""
    return lcm_upto(n) if n >= 1 else 1


def _ord2_int(k: int) -> int:
    return (k & -k).bit_length() - 1


def ord2(x) -> int:
    """Signed 2-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("ord2 of zero is undefined")
    return _ord2_int(x.numerator) - _ord2_int(x.denominator)


def odd_part(k: int) -> int:
    k = abs(k)
    if k == 0:
        raise ValueError("odd part of zero")
    return k >> _ord2_int(k)


def int_poly_eval(n: int, t) -> Fraction:
    """(t-1)(t-2)...(t-n)/n! evaluated exactly at a quarter-integer (or any rational) t."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(t, QuarterInt):
        q = t.quadruple
        return Fraction(prod(q - 4 * j for j in range(1, n + 1)), 4**n * factorial(n))
    t = Fraction(t)
    return Fraction(prod(t - j for j in range(1, n + 1))) / factorial(n)


def ceil_log2(k: int) -> int:
    """Ceiling of log2(k) for k >= 1, and 0 for k <= 1."""
    return (k - 1).bit_length() if k > 1 else 0
