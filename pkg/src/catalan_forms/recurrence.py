"""Second-order recurrences c2(n) x_{n+1} - c1(n) x_n - c0(n) x_{n-1} = 0 with
integer polynomial coefficients: exact iteration, verification, characteristic
roots, growth diagnostics and 2-power integrality certificates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .exact_arith import ceil_log2, lcm_upto_or_one, odd_part, ord2
from .hyper_eval import CertifiedReal, frac_to_mpf
from .tails import PrecisionError


def _peval(coeffs, n):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


@dataclass(frozen=True)
class Order2Rec:
    """c2(n) x_{n+1} = c1(n) x_n + c0(n) x_{n-1}; polynomials as ascending int tuples."""

    c2: tuple
    c1: tuple
    c0: tuple
    valid_from: int = 1

    def coeffs_at(self, n):
        return _peval(self.c2, n), _peval(self.c1, n), _peval(self.c0, n)


def rec13() -> Order2Rec:
    """The recursion satisfied by both u~_n and v~_n."""
    # (2n)^2 (2n+1)^2 (20n^2 - 20n + 3)
    c2 = (0, 0, 12, -32, -192, 0, 320)
    c1 = (-9, 0, 196, 0, -2672, 0, 3520)
    # (2n)^2 (2n+1)(2n-3)(20n^2 + 20n + 3)
    c0 = (0, 0, -36, -288, -512, 0, 320)
    return Order2Rec(c2, c1, c0, 1)


def constant_rec(a, b) -> Order2Rec:
    """x_{n+1} = a x_n + b x_{n-1}."""
    return Order2Rec((1,), (a,), (b,), 1)


class RecurrenceError(ArithmeticError):
    pass


def iterate(rec: Order2Rec, x0, x1, N, start=0):
    """[x_start, ..., x_N] by exact forward iteration from x_start, x_{start+1}."""
    if N < start + 1:
        raise ValueError("N must exceed the starting index")
    xs = [Fraction(x0), Fraction(x1)]
    for n in range(start + 1, N):
        a, b, c = rec.coeffs_at(n)
        if a == 0:
            raise RecurrenceError(f"leading coefficient vanishes at n={n}")
        xs.append((b * xs[-1] + c * xs[-2]) / a)
    return xs


def check_solution(rec: Order2Rec, seq, start=0):
    """(True, None) if seq satisfies rec at every interior index, else (False, first bad n)."""
    if len(seq) < 3:
        raise ValueError("need at least three terms")
    for i in range(1, len(seq) - 1):
        n = start + i
        if n < rec.valid_from:
            continue
        a, b, c = rec.coeffs_at(n)
        if a * seq[i + 1] - b * seq[i] - c * seq[i - 1] != 0:
            return False, n
    return True, None


@lru_cache(maxsize=8)
def _tilde_table(N):
    r = rec13()
    return tuple(iterate(r, 0, 6, N)), tuple(iterate(r, -1, 5, N))


def tilde_sequences(N):
    """(u~_0..u~_N, v~_0..v~_N) from the recursion and its initial data."""
    u, v = _tilde_table(max(N, 1))
    return list(u[: N + 1]), list(v[: N + 1])


# -- characteristic roots -------------------------------------------------------

@dataclass(frozen=True)
class CharRoots:
    """Roots of lambda^2 + a0 lambda + b0 for the normalized template x_{n+1} + a x_n + b x_{n-1} = 0."""

    a0: Fraction
    b0: Fraction
    root_larger: object
    root_smaller: object
    distinct_moduli: bool

    @property
    def discriminant(self) -> Fraction:
        return self.a0 * self.a0 - 4 * self.b0


def _limit_ratio(num, den):
    """lim num(n)/den(n) for integer polynomials; requires deg num <= deg den."""
    num = list(num)
    den = list(den)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    while len(den) > 1 and den[-1] == 0:
        den.pop()
    if len(num) > len(den):
        raise ValueError("coefficient ratio has no finite limit")
    if len(num) < len(den):
        return Fraction(0)
    return Fraction(num[-1], den[-1])


def char_roots(rec: Order2Rec, precision_bits=128) -> CharRoots:
    a0 = -_limit_ratio(rec.c1, rec.c2)
    b0 = -_limit_ratio(rec.c0, rec.c2)
    disc = a0 * a0 - 4 * b0
    with mpmath.workprec(precision_bits):
        sq = mpmath.sqrt(frac_to_mpf(disc)) if disc >= 0 else mpmath.sqrt(mpmath.mpc(frac_to_mpf(disc)))
        r1 = (-frac_to_mpf(a0) + sq) / 2
        r2 = (-frac_to_mpf(a0) - sq) / 2
    distinct = disc > 0 and a0 != 0
    if abs(r1) < abs(r2):
        r1, r2 = r2, r1
    return CharRoots(a0, b0, r1, r2, distinct)


# -- growth and certificates ---------------------------------------------------

def _to_mpf(x):
    return frac_to_mpf(x) if isinstance(x, Fraction) else mpmath.mpf(x)


def _log_abs(x):
    if isinstance(x, Fraction):
        return mpmath.log(abs(x.numerator)) - mpmath.log(x.denominator)
    return mpmath.log(abs(x))


@dataclass(frozen=True)
class GrowthRow:
    n: int
    root: object      # |x_n|^(1/n)
    ratio: object     # x_{n+1}/x_n (None at the last index)


def golden_targets(precision_bits=64):
    with mpmath.workprec(precision_bits):
        phi = (1 + mpmath.sqrt(5)) / 2
        return phi**5, (phi - 1) ** 5


def growth_diagnostics(seq, start=0, precision_bits=128):
    """|x_n|^(1/n) and x_{n+1}/x_n along a sequence (Fractions or high-precision reals).

    Logs are taken on the exact values; rounding happens only at the end.
    """
    rows = []
    with mpmath.workprec(precision_bits):
        for i, x in enumerate(seq):
            n = start + i
            if n == 0 or x == 0:
                continue
            root = mpmath.exp(_log_abs(x) / n)
            ratio = _to_mpf(seq[i + 1]) / _to_mpf(x) if i + 1 < len(seq) else None
            rows.append(GrowthRow(n, root, ratio))
    return rows


@dataclass(frozen=True)
class CertificateRow:
    n: int
    exponent: int          # ord2 of the denominator actually observed
    bound: int             # 4n + ceil(log2(2n)) + slack
    odd_part: int          # odd part of the denominator (must be 1)
    witness: int | None    # a prime dividing odd_part, if any
    strong: bool           # denominator divides 2^(4n)

    @property
    def passed(self) -> bool:
        return self.odd_part == 1 and self.exponent <= self.bound


def _small_prime_factor(k, limit=10**6):
    if k % 2 == 0:
        return 2
    p = 3
    while p * p <= k and p <= limit:
        if k % p == 0:
            return p
        p += 2
    return k if p * p > k else None


def integrality_certificate(seq, kind="u", slack_budget=8, start=0):
    """Per-n 2-power denominator certificate.

    kind "u": den(x_n) must be a power of 2 with exponent <= 4n + ceil(log2 2n) + slack.
    kind "v": the same for D_{2n-1}^2 x_n.
    """
    if kind not in ("u", "v"):
        raise ValueError("kind must be 'u' or 'v'")
    rows = []
    for i, x in enumerate(seq):
        n = start + i
        x = Fraction(x)
        if kind == "v":
            x *= lcm_upto_or_one(2 * n - 1) ** 2
        den = x.denominator
        e = ord2(den)
        odd = odd_part(den)
        bound = 4 * n + ceil_log2(2 * n) + slack_budget
        rows.append(CertificateRow(n, e, bound, odd, _small_prime_factor(odd) if odd > 1 else None,
                                   odd == 1 and e <= 4 * n))
    return rows


# -- Catalan's constant from the recursion ---------------------------------------

def catalan_from_recursion(bits=256) -> CertifiedReal:
    """G bracketed by consecutive ratios v~_n/u~_n.

    u~_n G - v~_n alternates in sign (it is (-1)^(n-1) n/2 times a positive
    integral) while u~_n > 0, so G lies between consecutive ratios.
    """
    target = Fraction(1, 2 ** (bits + 4))
    N = 16
    while N < 100000:
        u, v = tilde_sequences(N + 1)
        for n in range(1, N + 1):
            lo, hi = v[n] / u[n], v[n + 1] / u[n + 1]
            if abs(hi - lo) <= target:
                if u[n] <= 0 or u[n + 1] <= 0:
                    raise ArithmeticError("u~_n not positive; bracketing argument fails")
                with mpmath.workprec(bits + 16):
                    mid = (lo + hi) / 2
                    return CertifiedReal(frac_to_mpf(mid), frac_to_mpf(abs(hi - lo) / 2), bits)
        N *= 2
    raise PrecisionError(f"could not bracket G to 2^-{bits}")
