"""Certified tails of series whose consecutive-term ratio is a rational function.

For terms with t_{k+1} / t_k = P(k) / Q(k) and P, Q of equal degree with leading
ratio z = +1 or -1, we build R(k) = S(k) / k^M with

    R(k+1) P(k) - R(k) Q(k) = Q(k) (1 + e(k)),      e(k) = O(k^-(M+1)).

Summing R(k+1) t_{k+1} - R(k) t_k = t_k (1 + e(k)) from K to infinity telescopes
to -R(K) t_K. The defect sum of e(k) t_k is bounded rigorously:

* z = +1 (terms of one sign): |defect| <= eps/(1-eps) * |R(K) t_K|,
  eps = sup_{k>=K} |e(k)|;
* z = -1 (alternating): e(k) t_k alternates with nonincreasing modulus, so
  |defect| <= |e(K) t_K|.

Every sign and monotonicity condition on [K, oo) is certified by Taylor-shifting
the relevant polynomial to x = k - K and checking coefficient signs. All of it is
exact rational arithmetic; nothing is rounded.

If deg P < deg Q the terms decay factorially and a geometric bound is used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

Poly = list  # ascending Fraction coefficients


class TailCertificationError(ArithmeticError):
    """The sign/monotonicity certificate failed on the requested ray."""


class PrecisionError(ArithmeticError):
    """The requested accuracy was not reached within the term/order budget."""


class DivergentSeriesError(ValueError):
    pass


# -- polynomial helpers -----------------------------------------------------

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_add(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_scale(a, c):
    return _trim([x * c for x in a])


def poly_from_roots(roots, lead=1):
    """lead * prod (k - r)."""
    p = [Fraction(lead)]
    for r in roots:
        p = poly_mul(p, [Fraction(-r), Fraction(1)])
    return p


def poly_eval(p, x):
    acc = Fraction(0) if not isinstance(x, int) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_shift(p, h: int):
    """Coefficients of p(x + h) for an integer h (Taylor shift on integer coefficients)."""
    den = 1
    for c in p:
        d = Fraction(c).denominator
        den = den * d // gcd(den, d)
    q = [int(Fraction(c) * den) for c in p]
    n = len(q)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            q[j] += h * q[j + 1]
    return [Fraction(c, den) for c in q]


def _binomial_poly(m):
    """(k + 1)^m."""
    return [Fraction(comb(m, i)) for i in range(m + 1)]


def positive_on_ray(p, K) -> bool:
    """Sufficient test for p(k) > 0 on [K, oo): all shifted coefficients >= 0, constant > 0."""
    s = poly_shift(p, K)
    return s[0] > 0 and all(c >= 0 for c in s)


def nonnegative_on_ray(p, K) -> bool:
    s = poly_shift(p, K)
    return all(c >= 0 for c in s)


def sup_ratio_on_ray(num, den, K):
    """Upper bound on |num(k)/den(k)| over k >= K, or None when not certifiable.

    Requires deg num <= deg den; uses the termwise bound on shifted coefficients.
    """
    sn = poly_shift(num, K)
    sd = poly_shift(den, K)
    if any(c < 0 for c in sd) or len(sn) > len(sd):
        return None
    best = Fraction(0)
    for i, c in enumerate(sn):
        if c == 0:
            continue
        if sd[i] == 0:
            return None
        best = max(best, abs(c) / sd[i])
    return best


# -- telescoper ---------------------------------------------------------------

@dataclass(frozen=True)
class Telescoper:
    S: list          # R(k) = S(k) / k^M
    M: int
    N: list          # e(k) = N(k) / D(k)
    D: list

    def R(self, k):
        return poly_eval(self.S, k) / Fraction(k) ** self.M


def build_telescoper(P, Q, M) -> Telescoper:
    d = len(P) - 1
    if len(Q) - 1 != d:
        raise ValueError("telescoper needs deg P == deg Q")
    z = P[-1] / Q[-1]
    if z not in (1, -1):
        raise ValueError("leading ratio must be +1 or -1")
    deg_s = M + 1 if z == 1 else M
    k1m = _binomial_poly(M)
    Pk = [Fraction(0)] * M + list(P)          # P k^M
    Qk1 = poly_mul(Q, k1m)                    # Q (k+1)^M
    base = [Fraction(0)] * M + Qk1            # Q k^M (k+1)^M, degree 2M+d
    basis = []
    left = Pk
    for j in range(deg_s + 1):
        # (k+1)^j P k^M - k^j Q (k+1)^M
        basis.append(poly_add(left, [Fraction(0)] * j + [-c for c in Qk1]))
        left = poly_add(left, [Fraction(0)] + left)
    top = 2 * M + d

    def coef(p, i):
        return p[i] if 0 <= i < len(p) else Fraction(0)

    # basis_j has exact degree top - (deg_s - j): back-substitute from the top row
    S = [Fraction(0)] * (deg_s + 1)
    for j in range(deg_s, -1, -1):
        row = top - (deg_s - j)
        acc = coef(base, row) - sum(S[i] * coef(basis[i], row) for i in range(j + 1, deg_s + 1))
        S[j] = acc / coef(basis[j], row)
    N = poly_scale(base, -1)
    for j, s in enumerate(S):
        if s:
            N = poly_add(N, poly_scale(basis[j], s))
    if any(coef(N, i) != 0 for i in range(top - deg_s, len(N))):
        raise ArithmeticError("telescoper did not cancel the leading orders")
    return Telescoper(S=S, M=M, N=_trim(N), D=_trim(base))


@dataclass(frozen=True)
class TailEnclosure:
    """sum_{k >= start} t_k lies in [estimate - radius, estimate + radius]."""

    estimate: Fraction
    radius: Fraction
    start: int
    order: int


def excess(P, Q):
    """Parametric excess s: |t_{k+1}/t_k| = 1 - (s+1)/k + O(k^-2)."""
    d = len(P) - 1
    return (Q[d - 1] / Q[d] - P[d - 1] / P[d]) - 1


def tail_enclosure(tK, P, Q, K, M) -> TailEnclosure:
    """Enclose sum_{k >= K} t_k given t_K and the ratio polynomials."""
    P = [Fraction(c) for c in _trim(P)]
    Q = [Fraction(c) for c in _trim(Q)]
    if Q[-1] < 0:
        P, Q = poly_scale(P, -1), poly_scale(Q, -1)
    if tK == 0:
        return TailEnclosure(Fraction(0), Fraction(0), K, 0)
    if len(P) < len(Q):
        return _fast_tail(tK, P, Q, K)
    if len(P) > len(Q):
        raise DivergentSeriesError("term ratio grows without bound")
    z = P[-1] / Q[-1]
    if z not in (1, -1):
        raise DivergentSeriesError(f"leading term ratio {z} is not +-1")
    s = excess(P, Q)
    if z == 1 and s <= 0:
        raise DivergentSeriesError(f"parametric excess {s} <= 0 at z = 1")
    if z == -1 and s <= -1:
        raise DivergentSeriesError(f"parametric excess {s} <= -1 at z = -1")
    if not positive_on_ray(Q, K):
        raise TailCertificationError("Q not positive on the ray")
    tel = build_telescoper(P, Q, M)
    if not positive_on_ray(tel.D, K):
        raise TailCertificationError("defect denominator not positive on the ray")
    est = -tel.R(K) * tK
    if z == 1:
        if not positive_on_ray(P, K):
            raise TailCertificationError("P not positive on the ray")
        eps = sup_ratio_on_ray(tel.N, tel.D, K)
        if eps is None or eps >= 1:
            raise TailCertificationError("defect bound not below 1")
        radius = eps / (1 - eps) * abs(est)
    else:
        negP = poly_scale(P, -1)
        if not positive_on_ray(negP, K):
            raise TailCertificationError("ratio not negative on the ray")
        N = tel.N
        if all(c == 0 for c in N):
            return TailEnclosure(est, Fraction(0), K, M)
        sign = 1 if poly_shift(N, K)[0] > 0 else -1
        sN = poly_scale(N, sign)
        if not positive_on_ray(sN, K):
            raise TailCertificationError("defect changes sign on the ray")
        N1 = poly_shift(sN, 1)
        D1 = poly_shift(tel.D, 1)
        phi = poly_add(poly_mul(poly_mul(sN, D1), Q), poly_mul(poly_mul(N1, tel.D), P))
        if not nonnegative_on_ray(phi, K):
            raise TailCertificationError("defect terms not monotone on the ray")
        radius = abs(poly_eval(N, K) / poly_eval(tel.D, K) * tK)
    return TailEnclosure(est, radius, K, M)


def _fast_tail(tK, P, Q, K):
    r = sup_ratio_on_ray(P, Q, K)
    if r is None or r >= 1 or not positive_on_ray(Q, K):
        raise TailCertificationError("ratio bound not below 1")
    return TailEnclosure(Fraction(0), abs(tK) / (1 - r), K, 0)


@dataclass(frozen=True)
class SeriesEnclosure:
    """Exact partial sum plus certified tail: the series lies in center +- radius."""

    center: Fraction
    radius: Fraction
    terms: int
    order: int

    def lower(self):
        return self.center - self.radius

    def upper(self):
        return self.center + self.radius


def _ray_start(P, Q):
    """An integer beyond which all real roots of P and Q lie to the left (Cauchy bound)."""
    bound = 0
    for p in (P, Q):
        p = _trim(p)
        if len(p) > 1:
            lead = abs(p[-1])
            bound = max(bound, 1 + max(abs(c) / lead for c in p[:-1]))
    return int(bound) + 1


def ratio_series_sum(t0, P, Q, k0, tol, *, max_terms=20000, max_order=160) -> SeriesEnclosure:
    """Sum_{k >= k0} t_k with t_{k0} = t0 and t_{k+1} = t_k P(k)/Q(k), to radius <= tol.

    Head terms are accumulated exactly; the tail is enclosed by :func:`tail_enclosure`.
    """
    P = _trim([Fraction(c) for c in P])
    Q = _trim([Fraction(c) for c in Q])
    tol = Fraction(tol)
    K = max(k0, min(_ray_start(P, Q), 64), 16)
    M = 8
    k, t, acc = k0, Fraction(t0), Fraction(0)
    last_err = None
    while K <= max_terms:
        while k < K:
            acc += t
            q = poly_eval(Q, k)
            if q == 0:
                raise ZeroDivisionError(f"term ratio undefined at k={k}")
            t = t * poly_eval(P, k) / q
            k += 1
        if t == 0:
            return SeriesEnclosure(acc, Fraction(0), k - k0, 0)
        try:
            tail = tail_enclosure(t, P, Q, K, M)
        except TailCertificationError as exc:
            last_err = exc
            K = int(K * 1.5) + 1
            continue
        if tail.radius <= tol:
            return SeriesEnclosure(acc + tail.estimate, tail.radius, K - k0, tail.order)
        if M < max_order:
            M += 8
            K = max(K, 2 * M)
        else:
            K = int(K * 1.5) + 1
    raise PrecisionError(
        f"tail radius above {float(tol):.3g} within {max_terms} terms"
        + (f" (last certificate failure: {last_err})" if last_err else "")
    )
