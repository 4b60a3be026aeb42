"""Difference equations with irrational Perron limits: the counterexample
sequences built from floor(lambda^n), lambda = (11 + 5 sqrt 5)/2, the
geometric (denominator-growth) condition, and the Perron basis of the
recursion for (u~_n, v~_n).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import mpmath

from .hyper_eval import frac_to_mpf
from .recurrence import char_roots, rec13, tilde_sequences
from .tails import PrecisionError


@lru_cache(maxsize=None)
def _lucas_table(n):
    L = [2, 11]
    while len(L) <= n:
        L.append(11 * L[-1] + L[-2])
    return tuple(L)


def lucas(n: int) -> int:
    """L_0 = 2, L_1 = 11, L_{n+1} = 11 L_n + L_{n-1}; L_n = lambda^n + (-1/lambda)^n."""
    if n < 0:
        raise ValueError("n >= 0")
    return _lucas_table(n)[n]


def floor_lambda_pow(n: int) -> int:
    """floor(lambda^n): L_n - 1 for even n, L_n for odd n (0 < |lambda'|^n < 1 for n >= 1)."""
    if n < 0:
        raise ValueError("n >= 0")
    if n == 0:
        return 1
    return lucas(n) - 1 if n % 2 == 0 else lucas(n)


def lambda_value(precision_bits=128):
    with mpmath.workprec(precision_bits):
        return (11 + 5 * mpmath.sqrt(5)) / 2


def floor_lambda_pow_float(n: int, digits=100, fractional=True) -> int:
    """The same floor from a high-precision power, for cross-checking.

    With ``fractional`` the working precision is ``digits`` past the decimal
    point; otherwise ``digits`` significant digits, which cannot separate
    lambda^n from L_n once 1/lambda^n drops below 10^-(digits - n log10 lambda).
    """
    dps = digits + (int(n * 1.045) + 2 if fractional else 0)
    with mpmath.workdps(dps):
        return int(mpmath.floor(lambda_value(mpmath.mp.prec) ** n))


def counterexample_x(n: int) -> Fraction:
    return Fraction((-1) ** n, floor_lambda_pow(n))


def counterexample_y(n: int) -> int:
    return floor_lambda_pow(n)


def ab_counterexample(n: int):
    """(a(n), b(n)) making both sequences solve x_{n+1} + a(n) x_n + b(n) x_{n-1} = 0."""
    if n < 1:
        raise ValueError("n >= 1")
    f0, f1, f2 = floor_lambda_pow(n - 1), floor_lambda_pow(n), floor_lambda_pow(n + 1)
    b = -Fraction(f0, f2) * Fraction(f1 * f1 + f2 * f2, f0 * f0 + f1 * f1)
    a = Fraction(f1, f0) * b + Fraction(f1, f2)
    return a, b


@dataclass(frozen=True)
class CounterexampleReport:
    N: int
    exact_ok: bool                 # both recursion identities vanish exactly for 1 <= n <= N
    first_failure: int | None
    ab_limit_residual: tuple       # (|a(N) + 11|, |b(N) + 1|)
    x_ratio_residual: mpmath.mpf   # |x_{m+1}/x_m + 1/lambda| at m = min(N, 100)
    y_ratio_residual: mpmath.mpf   # |y_{m+1}/y_m - lambda|
    discriminant: int
    roots_irrational: bool

    @property
    def passed(self):
        return self.exact_ok and self.roots_irrational


def verify_counterexample(N=500, precision_bits=256) -> CounterexampleReport:
    if N < 2:
        raise ValueError("N >= 2")
    first_bad = None
    for n in range(1, N + 1):
        a, b = ab_counterexample(n)
        rx = counterexample_x(n + 1) + a * counterexample_x(n) + b * counterexample_x(n - 1)
        ry = counterexample_y(n + 1) + a * counterexample_y(n) + b * counterexample_y(n - 1)
        if rx != 0 or ry != 0:
            first_bad = n
            break
    aN, bN = ab_counterexample(N)
    m = min(N, 100)
    # the residuals are about lambda^(-2m); keep enough bits to see them
    with mpmath.workprec(max(precision_bits, 8 * m + 64)):
        lam = lambda_value(mpmath.mp.prec)
        ab_res = (abs(frac_to_mpf(aN + 11)), abs(frac_to_mpf(bN + 1)))
        xr = abs(frac_to_mpf(counterexample_x(m + 1) / counterexample_x(m)) + 1 / lam)
        yr = abs(mpmath.mpf(counterexample_y(m + 1)) / counterexample_y(m) - lam)
    # characteristic polynomial t^2 + a0 t + b0 with (a0, b0) = (-11, -1)
    disc = 11 * 11 + 4
    irrational = isqrt(disc) ** 2 != disc
    return CounterexampleReport(N, first_bad is None, first_bad, ab_res, xr, yr, disc, irrational)


@dataclass(frozen=True)
class DenLcmTrace:
    lcm_dens: tuple      # least common denominator of x_0..x_n
    trace: tuple         # log(lcm_dens[n]) / n for n >= 1 (index 0 holds 0)


def den_lcm_growth(x_seq, N=None) -> DenLcmTrace:
    xs = [Fraction(x) for x in x_seq]
    if N is not None:
        xs = xs[: N + 1]
    dens, trace = [], []
    L = 1
    for n, x in enumerate(xs):
        d = x.denominator
        L = L * d // gcd(L, d)
        dens.append(L)
        trace.append(mpmath.mpf(0) if n == 0 else mpmath.log(L) / n)
    return DenLcmTrace(tuple(dens), tuple(trace))


@dataclass(frozen=True)
class PerronRow:
    n: int
    u_ratio: mpmath.mpf
    r_ratio: mpmath.mpf
    u_residual: mpmath.mpf
    r_residual: mpmath.mpf


@dataclass(frozen=True)
class PerronReport:
    rows: tuple
    root_large: mpmath.mpf
    root_small: mpmath.mpf
    root_product: Fraction      # exact, from the characteristic polynomial
    distinct_moduli: bool


def perron_basis_check(N, G_ref, every=10) -> PerronReport:
    """Ratios u~_{n+1}/u~_n and r~_{n+1}/r~_n, r~_n = u~_n G - v~_n, against the characteristic roots."""
    if N < 10:
        raise ValueError("N >= 10")
    G = getattr(G_ref, "value", G_ref)
    bits = getattr(G_ref, "bits", mpmath.mp.prec)
    radius = getattr(G_ref, "radius", mpmath.mpf(2) ** -bits)
    u, v = tilde_sequences(N + 1)
    roots = char_roots(rec13(), precision_bits=bits)
    rows = []
    with mpmath.workprec(bits + 32):
        for n in range(1, N + 1):
            if n % every and n != N:
                continue
            r0 = frac_to_mpf(u[n]) * G - frac_to_mpf(v[n])
            r1 = frac_to_mpf(u[n + 1]) * G - frac_to_mpf(v[n + 1])
            # error in r~ is at most u~ * radius; require it to be well below |r~|
            if frac_to_mpf(u[n + 1]) * radius * 2**20 > abs(r1):
                raise PrecisionError(f"G_ref too coarse to resolve r~_{n + 1}")
            ur = frac_to_mpf(u[n + 1] / u[n])
            rr = r1 / r0
            rows.append(PerronRow(n, ur, rr, abs(ur - roots.root_larger), abs(rr - roots.root_smaller)))
    return PerronReport(tuple(rows), roots.root_larger, roots.root_smaller, roots.b0, roots.distinct_moduli)
