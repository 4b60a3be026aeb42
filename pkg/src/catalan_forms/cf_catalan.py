"""The continued fraction

    6G = 5 + 516/(q(2) + p(3)/(q(4) + p(5)/(q(6) + ...)))

with exact convergents and their identification with v~_{N+1}/u~_{N+1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .hyper_eval import frac_to_mpf
from .recurrence import tilde_sequences

HEAD = 5
FIRST_NUMERATOR = 516


def p_poly(n: int) -> int:
    return (5 * n * n - 20 * n + 18) * (n - 2) * (n - 1) ** 2 * n * n * (n + 1) ** 2 * (n + 2) * (5 * n * n + 20 * n + 18)


def q_poly(n: int) -> int:
    return 55 * n**6 - 167 * n**4 + 49 * n**2 - 9


def pq_eval(n: int):
    if n < 1:
        raise ValueError("n >= 1")
    return p_poly(n), q_poly(n)


@dataclass(frozen=True)
class CFExpansion:
    """Partial numerators a_k and denominators b_k, k >= 1, after the head."""

    head: int = HEAD
    first_numerator: int = FIRST_NUMERATOR
    p: object = p_poly
    q: object = q_poly

    def numerator(self, k):
        return self.first_numerator if k == 1 else self.p(2 * k - 1)

    def denominator(self, k):
        return self.q(2 * k)


def convergent(N: int, cf: CFExpansion | None = None, method="backward") -> Fraction:
    """The N-th convergent (N = 0 gives the head)."""
    if N < 0:
        raise ValueError("N >= 0")
    cf = cf or CFExpansion()
    if method == "backward":
        tail = Fraction(0)
        for k in range(N, 0, -1):
            d = cf.denominator(k) + tail
            if d == 0:
                raise ZeroDivisionError(f"zero denominator at level {k}")
            tail = Fraction(cf.numerator(k)) / d
        return cf.head + tail
    if method == "forward":
        P0, P1 = 1, cf.head
        Q0, Q1 = 0, 1
        for k in range(1, N + 1):
            a, b = cf.numerator(k), cf.denominator(k)
            P0, P1 = P1, b * P1 + a * P0
            Q0, Q1 = Q1, b * Q1 + a * Q0
        if Q1 == 0:
            raise ZeroDivisionError(f"zero denominator at N={N}")
        return Fraction(P1, Q1)
    raise ValueError("method is 'backward' or 'forward'")


@dataclass(frozen=True)
class CFRow:
    N: int
    convergent: Fraction
    recursion_value: Fraction
    equal: bool


def cf_vs_recursion(Nmax: int, cf: CFExpansion | None = None):
    """(rows, first failing N or None) for convergent(N) = 6 v~_{N+1}/u~_{N+1}, 1 <= N <= Nmax."""
    if Nmax < 1:
        raise ValueError("Nmax >= 1")
    u, v = tilde_sequences(Nmax + 1)
    rows, first_bad = [], None
    for N in range(1, Nmax + 1):
        conv = convergent(N, cf)
        rec = 6 * v[N + 1] / u[N + 1]
        ok = conv == rec
        rows.append(CFRow(N, conv, rec, ok))
        if not ok and first_bad is None:
            first_bad = N
    return rows, first_bad


def agreeing_digits(x, y) -> int:
    """Decimal digits of agreement, floor(-log10 |x - y| / |y|), floored at 0."""
    if x == y:
        return mpmath.mp.dps
    rel = abs(x - y) / abs(y)
    return max(0, int(mpmath.floor(-mpmath.log10(rel))))


def digits_report(N: int, G_ref, precision_bits=None) -> int:
    """Agreeing decimal digits between convergent(N) and 6G."""
    G = getattr(G_ref, "value", G_ref)
    # each step gains about 7 bits, so the comparison needs at least that much
    bits = precision_bits or max(getattr(G_ref, "bits", 0), 8 * N + 64)
    with mpmath.workprec(bits):
        return agreeing_digits(frac_to_mpf(convergent(N)), 6 * G)
