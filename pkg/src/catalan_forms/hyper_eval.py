"""Exact Gamma values at half-integers, certified hypergeometric sums at z = +-1,
Whipple's 6F5 -> 3F2 transform check, and the Beta series for the double integral H(c).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .exact_arith import QuarterInt
from .tails import DivergentSeriesError, PrecisionError, ratio_series_sum


class GammaPoleError(ValueError):
    """Gamma evaluated at a nonpositive integer."""


def frac_to_mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass(frozen=True)
class CertifiedReal:
    """A real number known to lie within ``radius`` of ``value``."""

    value: mpmath.mpf
    radius: mpmath.mpf
    bits: int

    def __iter__(self):
        yield self.value
        yield self.radius

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class GammaExact:
    """rational_part * sqrt(pi) ** sqrt_pi_power; the exponent may be negative in quotients."""

    rational_part: Fraction
    sqrt_pi_power: int = 0

    def __mul__(self, other):
        if isinstance(other, GammaExact):
            return GammaExact(self.rational_part * other.rational_part,
                              self.sqrt_pi_power + other.sqrt_pi_power)
        return GammaExact(self.rational_part * Fraction(other), self.sqrt_pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GammaExact):
            return GammaExact(self.rational_part / other.rational_part,
                              self.sqrt_pi_power - other.sqrt_pi_power)
        return GammaExact(self.rational_part / Fraction(other), self.sqrt_pi_power)

    def to_mpf(self):
        return frac_to_mpf(self.rational_part) * mpmath.sqrt(mpmath.pi) ** self.sqrt_pi_power


def _as_fraction(x) -> Fraction:
    return x.as_fraction() if isinstance(x, QuarterInt) else Fraction(x)


def gamma_exact(a) -> GammaExact:
    """Gamma at an integer or half-odd argument, exactly."""
    a = _as_fraction(a)
    if (2 * a).denominator != 1:
        raise ValueError(f"gamma_exact only handles halves, got {a}")
    if a.denominator == 1:
        m = a.numerator
        if m <= 0:
            raise GammaPoleError(f"Gamma has a pole at {m}")
        return GammaExact(Fraction(factorial(m - 1)), 0)
    m = a - Fraction(1, 2)
    if m >= 0:
        m = int(m)
        return GammaExact(Fraction(factorial(2 * m), 4**m * factorial(m)), 1)
    # Gamma(z) = Gamma(z + k) / (z (z+1) ... (z+k-1)) with z + k = 1/2
    k = int(-m)
    den = Fraction(1)
    for i in range(k):
        den *= a + i
    return GammaExact(Fraction(1) / den, 1)


# -- hypergeometric sums -------------------------------------------------------

def _ratio_polys(upper, lower, z):
    """P(k), Q(k) with t_{k+1}/t_k = z prod(k+a) / ((k+1) prod(k+b))."""
    P = [Fraction(z)]
    for a in upper:
        P = _mul_linear(P, a)
    Q = _mul_linear([Fraction(1)], 1)
    for b in lower:
        Q = _mul_linear(Q, b)
    return P, Q


def _mul_linear(p, c):
    """p(k) * (k + c)."""
    c = Fraction(c)
    out = [Fraction(0)] * (len(p) + 1)
    for i, x in enumerate(p):
        out[i] += x * c
        out[i + 1] += x
    return out


def _series_tol(bits):
    return Fraction(1, 2 ** (bits + 8))


def pfq_sum(upper, lower, z, bits):
    """Exact-rational enclosure of pFq(upper; lower | z) for z = +-1."""
    upper = [_as_fraction(a) for a in upper]
    lower = [_as_fraction(b) for b in lower]
    if z not in (1, -1):
        raise ValueError("only z = +1 or z = -1 is supported")
    for b in lower:
        if b.denominator == 1 and b <= 0:
            raise ValueError(f"lower parameter {b} is a nonpositive integer")
    terminating = any(a.denominator == 1 and a <= 0 for a in upper)
    if len(upper) == len(lower) + 1 and not terminating:
        s = sum(lower) - sum(upper)
        if (z == 1 and s <= 0) or (z == -1 and s <= -1):
            raise DivergentSeriesError(f"parametric excess {s} outside the convergence range at z={z}")
    elif len(upper) > len(lower) + 1 and not terminating:
        raise DivergentSeriesError("p > q + 1 diverges")
    P, Q = _ratio_polys(upper, lower, z)
    return ratio_series_sum(1, P, Q, 0, _series_tol(bits))


def pfq_truncated(upper, lower, z, precision_bits=256) -> CertifiedReal:
    """pFq at z = +-1 as a partial sum plus a rigorous tail bound."""
    enc = pfq_sum(upper, lower, z, precision_bits)
    with mpmath.workprec(precision_bits + 16):
        return CertifiedReal(+frac_to_mpf(enc.center), frac_to_mpf(enc.radius) + mpmath.mpf(2) ** -precision_bits,
                             precision_bits)


def whipple_check(a, b, c, d, e, precision_bits=256):
    """|LHS - RHS| of Whipple's 6F5(-1) -> 3F2(1) transform.

    Returns (residual, radius, sqrt_pi_power) where radius bounds the certified
    error of both series; the Gamma ratio is exact.
    """
    a, b, c, d, e = (_as_fraction(x) for x in (a, b, c, d, e))
    if 1 + a - d - e <= 0:
        raise ValueError("Whipple's transform needs 1 + a - d - e > 0")
    num = gamma_exact(1 + a - d) * gamma_exact(1 + a - e)
    den = gamma_exact(1 + a) * gamma_exact(1 + a - d - e)
    ratio = num / den
    lhs = pfq_sum([a, 1 + a / 2, b, c, d, e],
                  [a / 2, 1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e], -1, precision_bits)
    rhs = pfq_sum([1 + a - b - c, d, e], [1 + a - b, 1 + a - c], 1, precision_bits)
    with mpmath.workprec(precision_bits + 32):
        if ratio.sqrt_pi_power == 0:
            diff = lhs.center - ratio.rational_part * rhs.center
            residual = abs(frac_to_mpf(diff))
            radius = frac_to_mpf(lhs.radius + abs(ratio.rational_part) * rhs.radius)
        else:
            rv = ratio.to_mpf()
            residual = abs(frac_to_mpf(lhs.center) - rv * frac_to_mpf(rhs.center))
            radius = frac_to_mpf(lhs.radius) + abs(rv) * frac_to_mpf(rhs.radius)
    return residual, radius, ratio.sqrt_pi_power


# -- double integral H(c) -----------------------------------------------------

def beta_exact(x, y) -> GammaExact:
    return gamma_exact(x) * gamma_exact(y) / gamma_exact(_as_fraction(x) + _as_fraction(y))


def h_beta_parts(c):
    """Leading Beta product and the 3F2(1) parameters of the Beta expansion of H(c).

    H(c) = sum_k (c11+1)_k/k! B(c21+1+k, c22+1) B(c31+1+k, c33+1)
         = B(c21+1, c22+1) B(c31+1, c33+1) * 3F2(a1, a2, a3; b2, b3 | 1).
    """
    c11, c21, c22, c31, c33 = (_as_fraction(c[k]) for k in ("11", "21", "22", "31", "33"))
    for label, val in (("11", c11), ("21", c21), ("22", c22), ("31", c31), ("33", c33)):
        if val <= -1:
            raise ValueError(f"c{label} = {val} must exceed -1")
    if c22 + c33 + 1 - c11 <= 0:
        raise DivergentSeriesError("convergence exponent c22 + c33 + 1 - c11 must be positive")
    lead = beta_exact(c21 + 1, c22 + 1) * beta_exact(c31 + 1, c33 + 1)
    upper = [c11 + 1, c21 + 1, c31 + 1]
    lower = [c21 + c22 + 2, c31 + c33 + 2]
    return lead, upper, lower


def h_beta_series(c, precision_bits=256) -> CertifiedReal:
    """H(c) = double integral of x^c21 (1-x)^c22 y^c31 (1-y)^c33 / (1-xy)^(c11+1).

    Entries must be integers or half-integers. The series is summed exactly and
    its tail enclosed; when c is demi-integral the leading factor is rational.
    """
    lead, upper, lower = h_beta_parts(c)
    scale = max(1, abs(lead.rational_part) * 2 ** max(lead.sqrt_pi_power, 0))
    enc = pfq_sum(upper, lower, 1, precision_bits + int(scale).bit_length())
    with mpmath.workprec(precision_bits + 32):
        lv = lead.to_mpf()
        value = lv * frac_to_mpf(enc.center)
        radius = abs(lv) * frac_to_mpf(enc.radius)
    return CertifiedReal(value, radius, precision_bits)


def h_beta_exact(c, precision_bits=256):
    """(lead, enclosure) with the series part kept as an exact rational enclosure."""
    lead, upper, lower = h_beta_parts(c)
    return lead, pfq_sum(upper, lower, 1, precision_bits)


def euler_c(n):
    """The five exponents of the Euler-type integral for the new sequence at index n."""
    if n < 1:
        raise ValueError("n >= 1")
    h = Fraction(1, 2)
    return {"11": Fraction(n - 1), "21": n - 3 * h, "22": Fraction(n), "31": Fraction(n - 1), "33": n - h}


def euler_integral_check(n, precision_bits=256, G=None):
    """|(u~_n G - v~_n) - ((-1)^(n-1) n/2) H(c(n))| with H from the Beta series.

    ``G`` defaults to the recursion-bracketed Catalan constant.
    """
    from .linear_forms import tilde_un_vn
    from .recurrence import catalan_from_recursion

    with mpmath.workprec(precision_bits + 32):
        if G is None:
            G = catalan_from_recursion(precision_bits + 32).value
        form = tilde_un_vn(n)
        H = h_beta_series(euler_c(n), precision_bits + 16)
        lhs = frac_to_mpf(form.u) * G - frac_to_mpf(form.v)
        rhs = Fraction((-1) ** (n - 1) * n, 2)
        return abs(lhs - frac_to_mpf(rhs) * H.value)


__all__ = [
    "CertifiedReal", "DivergentSeriesError", "GammaExact", "GammaPoleError", "PrecisionError",
    "beta_exact", "euler_c", "euler_integral_check", "gamma_exact", "h_beta_exact",
    "h_beta_series", "pfq_sum", "pfq_truncated", "whipple_check",
]
