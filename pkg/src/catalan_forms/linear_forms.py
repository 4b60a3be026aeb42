"""Rational linear forms u*G - v built from partial fractions with quarter-integer poles.

A rational function R(t) = sum_p c_p / (t - p) with every pole p in Z +- 1/4
gives

    -sum_{nu >= 1} R'(nu) = sum_p c_p sum_{nu >= 1} (nu - p)^-2,

and each inner sum is 16*sigma1 or 16*sigma3 plus a finite rational correction,
with sigma1 = sum (4mu+1)^-2, sigma3 = sum (4mu+3)^-2 and G = sigma1 - sigma3.
When the c_p sum to zero the sigma parts collapse to a multiple of G.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

import mpmath

from .exact_arith import QuarterInt, int_poly_eval
from .hyper_eval import CertifiedReal, frac_to_mpf
from .tails import PrecisionError, ratio_series_sum


@dataclass(frozen=True)
class PartialFractionForm:
    """sum of coeff / (t - pole) over distinct poles in Z +- 1/4."""

    terms: tuple

    def __post_init__(self):
        poles = [p for p, _ in self.terms]
        if len(set(poles)) != len(poles):
            raise ValueError("poles must be distinct")
        for p in poles:
            if not isinstance(p, QuarterInt) or not p.is_quarter_odd:
                raise ValueError(f"pole {p} is not in Z +- 1/4")

    @property
    def coeff_sum(self) -> Fraction:
        return sum((c for _, c in self.terms), Fraction(0))

    def as_dict(self):
        return {p: c for p, c in self.terms}


@dataclass(frozen=True)
class LinearFormQG:
    """The real number u*G - v."""

    u: Fraction
    v: Fraction

    @property
    def sigma1_coeff(self) -> Fraction:
        return self.u

    @property
    def sigma3_coeff(self) -> Fraction:
        return -self.u

    @property
    def const_coeff(self) -> Fraction:
        return -self.v

    def evaluate(self, G):
        return frac_to_mpf(self.u) * G - frac_to_mpf(self.v)


def decompose(numer_roots, denom_roots, scale) -> PartialFractionForm:
    """Partial fractions of scale * prod(t - r) / prod(t - q) with simple poles q.

    ``numer_roots`` lists roots with repetition (or maps root -> multiplicity).
    """
    if isinstance(numer_roots, dict):
        numer = [QuarterInt.of(r) for r, m in numer_roots.items() for _ in range(m)]
    else:
        numer = [QuarterInt.of(r) for r in numer_roots]
    poles = [QuarterInt.of(q) for q in denom_roots]
    if len(set(poles)) != len(poles):
        raise ValueError("repeated denominator root: only simple poles are supported")
    if len(numer) > len(poles) - 2:
        raise ValueError("numerator degree must be at most denominator degree - 2")
    scale = Fraction(scale)
    R = [r.quadruple for r in numer]
    Pq = [p.quadruple for p in poles]
    # in quadruple units: coeff = scale * 4^(#poles - 1 - #roots) * prod(P-R) / prod(P-P')
    power = len(Pq) - 1 - len(R)
    terms = []
    for i, p in enumerate(Pq):
        num = prod(p - r for r in R)
        den = prod(p - q for j, q in enumerate(Pq) if j != i)
        terms.append((poles[i], scale * Fraction(num * 4**power, den)))
    return PartialFractionForm(tuple(terms))


class _InvSquarePrefix:
    """Prefix sums F_r(k) = sum_{i<k} (4i + r)^-2 for r in {1, 3}, grown on demand."""

    def __init__(self):
        self._tables = {1: [Fraction(0)], 3: [Fraction(0)]}

    def __call__(self, r, k):
        table = self._tables[r]
        while len(table) <= k:
            i = len(table) - 1
            table.append(table[-1] + Fraction(1, (4 * i + r) ** 2))
        return table[k]


_prefix = _InvSquarePrefix()


def _pole_correction(q: int) -> Fraction:
    """sum_{nu>=1} 16/(4nu - q)^2 minus its full sigma part, for pole q/4 with q odd."""
    r = q % 4
    m = (q - r) // 4
    if m >= 1:
        return 16 * _prefix(r, m)
    if m <= -1:
        return -16 * _prefix(4 - r, -m)
    return Fraction(0)


def tails_to_form(pf: PartialFractionForm) -> LinearFormQG:
    """(u, v) with sum_{nu>=1} sum_p c_p (nu - p)^-2 = u*G - v."""
    if pf.coeff_sum != 0:
        raise ValueError("coefficients must sum to zero for the sigma parts to collapse to G")
    u = Fraction(0)
    corr = Fraction(0)
    for pole, c in pf.terms:
        if c == 0:
            continue
        q = pole.quadruple
        if q % 4 == 3:   # pole in Z + 3/4 feeds sigma1
            u += c
        corr += c * _pole_correction(q)
    return LinearFormQG(16 * u, -corr)


# -- the original sequence --------------------------------------------------

def R_data(n):
    """(numerator roots, poles, scale) of R_n(t)."""
    numer = [QuarterInt(4 * j) for j in range(1, n + 1) for _ in range(2)]
    poles = [QuarterInt(2 * n + 3 - 2 * j) for j in range(2 * n + 2)]
    scale = Fraction((-1) ** n * factorial(2 * n + 1), 8 * factorial(n) ** 2 * 2 ** (2 * n + 2))
    return numer, poles, scale


def tilde_R_data(n):
    """(numerator roots, poles, scale) of the modified function defining the new sequence."""
    if n < 1:
        raise ValueError("n >= 1")
    numer = [QuarterInt(4 * j) for j in range(1, n)] + [QuarterInt(4 * j) for j in range(1, n + 1)]
    poles = [QuarterInt(2 * n + 1 - 2 * j) for j in range(2 * n + 1)]
    scale = Fraction((-1) ** n * factorial(2 * n), 2 * factorial(n - 1) ** 2 * 2 ** (2 * n + 1))
    return numer, poles, scale


def coeffs_A(n):
    """Closed-form partial-fraction coefficients (A_l, A'_l), l = 0..n, of R_n."""
    if n < 0:
        raise ValueError("n >= 0")
    sign = (-1) ** n
    f = factorial(2 * n + 1)
    A, Ap = [], []
    for l in range(n + 1):
        x = int_poly_eval(n, QuarterInt(-4 * l + 2 * n + 3))
        y = int_poly_eval(n, QuarterInt(-4 * l + 2 * n + 1))
        A.append(Fraction(sign * f, 16 * factorial(2 * l) * factorial(2 * n - 2 * l + 1)) * x * x)
        Ap.append(Fraction(-sign * f, 16 * factorial(2 * l + 1) * factorial(2 * n - 2 * l)) * y * y)
    return A, Ap


def un_vn(n) -> LinearFormQG:
    """(u_n, v_n) from the closed-form coefficients and the epsilon bookkeeping."""
    A, Ap = coeffs_A(n)
    m, mp = (n + 1) // 2, n // 2
    eps = 1 if n % 2 == 0 else 3
    epsp = 4 - eps
    u = 16 * (-1) ** n * sum(A, Fraction(0))
    # sum_{mu=1}^{k} (4mu - e)^-2 = F_{4-e}(k);  sum_{mu=0}^{k-1} (4mu + e)^-2 = F_e(k)
    v = Fraction(0)
    for l in range(m):
        v -= 16 * A[l] * _prefix(4 - eps, m - l)
    for l in range(mp):
        v -= 16 * Ap[l] * _prefix(4 - epsp, mp - l)
    for l in range(m + 1, n + 1):
        v += 16 * A[l] * _prefix(eps, l - m)
    for l in range(mp + 1, n + 1):
        v += 16 * Ap[l] * _prefix(epsp, l - mp)
    return LinearFormQG(u, v)


def un_vn_generic(n) -> LinearFormQG:
    """Same pair through the generic decompose -> tails pipeline."""
    return tails_to_form(decompose(*R_data(n)))


def tilde_un_vn(n) -> LinearFormQG:
    """(u~_n, v~_n); n = 0 is the stored base case (0, -1)."""
    if n < 0:
        raise ValueError("n >= 0")
    if n == 0:
        return LinearFormQG(Fraction(0), Fraction(-1))
    return tails_to_form(decompose(*tilde_R_data(n)))


# -- the defining alternating series ------------------------------------------

def rn_term(n, t) -> Fraction:
    """t-th term of the alternating series for r_n; zero for t < n."""
    half = Fraction(1, 2)
    num = Fraction(factorial(n), 8) * (2 * t + n + 1)
    num *= prod(t - j + 1 for j in range(1, n + 1)) * prod(t + j + n for j in range(1, n + 1))
    den = prod(t + j + half for j in range(n + 1)) ** 3
    return (-1) ** t * num / den


def _rn_ratio(n):
    """P, Q with term(t+1)/term(t) = P(t)/Q(t) for t >= n."""
    from .tails import poly_from_roots

    h = Fraction(1, 2)
    # -(2t+n+3)(t+1)(t+2n+1)(t+1/2)^3 / ((2t+n+1)(t-n+1)(t+n+1)(t+n+3/2)^3)
    up = [Fraction(-(n + 3), 2), Fraction(-1), Fraction(-(2 * n + 1)), -h, -h, -h]
    dn = [Fraction(-(n + 1), 2), Fraction(n - 1), Fraction(-(n + 1))] + [-(n + 1) - h] * 3
    return poly_from_roots(up, lead=-2), poly_from_roots(dn, lead=2)


def rn_numeric(n, precision_bits=256) -> CertifiedReal:
    """r_n from its alternating series: exact head, certified tail."""
    if n < 0:
        raise ValueError("n >= 0")
    if precision_bits < 64:
        raise ValueError("precision_bits >= 64")
    P, Q = _rn_ratio(n)
    try:
        enc = ratio_series_sum(rn_term(n, n), P, Q, n, Fraction(1, 2 ** (precision_bits + 8)))
    except PrecisionError:
        raise PrecisionError(f"r_{n} not reachable to 2^-{precision_bits // 2}") from None
    with mpmath.workprec(precision_bits + 32):
        value = frac_to_mpf(enc.center)
        radius = frac_to_mpf(enc.radius)
    if radius > mpmath.mpf(2) ** (-(precision_bits // 2)):
        raise PrecisionError(f"r_{n} tail bound {radius} above 2^-{precision_bits // 2}")
    return CertifiedReal(value, radius, precision_bits)
