"""The order-120 permutation group acting on the ten parameters c of the
double integral

    H(c) = int_0^1 int_0^1 x^c21 (1-x)^c22 y^c31 (1-y)^c33 / (1-xy)^(c11+1) dx dy,

together with demi-integrality, the Gamma normalizer Pi(c), stability checks
and an integer-relation probe for H(c) in QG + Q.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath

from .exact_arith import QuarterInt, lcm_upto_or_one, odd_part, ord2
from .hyper_eval import CertifiedReal, GammaExact, GammaPoleError, frac_to_mpf, gamma_exact, h_beta_exact, h_beta_series
from .lattice import lll_reduce

LABELS = ("00", "11", "12", "13", "21", "22", "23", "31", "32", "33")
_POS = {lab: i for i, lab in enumerate(LABELS)}
PRIME_LABELS = ("00", "21", "22", "33", "31")
DPRIME_LABELS = ("11", "23", "13", "12", "32")


class StructuralError(ValueError):
    """A parameter set violating its defining linear relations or typing."""


def _half(x) -> Fraction:
    return x.as_fraction() if isinstance(x, QuarterInt) else Fraction(x)


# -- parameter sets -------------------------------------------------------------

def _abc_from_prime(c00, c21, c22, c33, c31):
    a2 = c21 + 1
    a3 = c31 + 1
    b2 = c22 + a2 + 1
    b3 = c33 + a3 + 1
    a1 = b2 + b3 - a2 - a3 - 1 - c00
    return (a1, a2, a3), (b2, b3)


def _c_from_ab(a, b):
    a1, a2, a3 = a
    b2, b3 = b
    bb = {2: b2, 3: b3}
    out = {"00": b2 + b3 - (a1 + a2 + a3) - 1}
    for j, aj in ((1, a1), (2, a2), (3, a3)):
        out[f"{j}1"] = aj - 1
        for l in (2, 3):
            out[f"{j}{l}"] = bb[l] - aj - 1
    return out


@dataclass(frozen=True)
class CVector:
    """All ten entries of c, stored redundantly and checked against their defining relations."""

    entries: tuple
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if len(self.entries) != 10:
            raise StructuralError("a parameter set has exactly ten entries")
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in self.entries))
        if self.validate:
            expected = _c_from_ab(*_abc_from_prime(*self.prime))
            bad = [lab for lab in LABELS if expected[lab] != self[lab]]
            if bad:
                raise StructuralError(f"entries {bad} inconsistent with c'")

    @classmethod
    def from_mapping(cls, m, validate=True):
        return cls(tuple(Fraction(m[lab]) for lab in LABELS), validate)

    @classmethod
    def from_prime(cls, c00, c21, c22, c33, c31):
        """Complete c from c' = (c00, c21, c22, c33, c31)."""
        vals = [_half(x) for x in (c00, c21, c22, c33, c31)]
        return cls.from_mapping(_c_from_ab(*_abc_from_prime(*vals)))

    def __getitem__(self, label):
        return self.entries[_POS[label]]

    @property
    def prime(self):
        return tuple(self[lab] for lab in PRIME_LABELS)

    @property
    def dprime(self):
        return tuple(self[lab] for lab in DPRIME_LABELS)

    @property
    def admissible(self) -> bool:
        return all(x > -1 for x in self.entries)

    def as_dict(self):
        return {lab: self[lab] for lab in LABELS}


@dataclass(frozen=True)
class HParams:
    h0: Fraction
    h1: Fraction
    h2: Fraction
    h3: Fraction
    h4: Fraction

    def __post_init__(self):
        for name in ("h0", "h1", "h2", "h3", "h4"):
            v = _half(getattr(self, name))
            if (2 * v).denominator != 1:
                raise ValueError(f"{name} = {v} is not a half-integer")
            object.__setattr__(self, name, v)

    @property
    def demi_integral(self) -> bool:
        return (self.h0.denominator == 1 and self.h4.denominator == 1
                and all(h.denominator == 2 for h in (self.h1, self.h2, self.h3)))

    @property
    def positive(self) -> bool:
        """h_j > 0 and 1 + h0 - h_j - h_l > 0 for distinct j, l in 1..4."""
        hs = (self.h1, self.h2, self.h3, self.h4)
        return all(x > 0 for x in hs) and all(
            1 + self.h0 - hs[i] - hs[j] > 0 for i in range(4) for j in range(i + 1, 4))


def c_from_h(h: HParams) -> CVector:
    a = (1 + h.h0 - h.h1 - h.h2, h.h3, h.h4)
    b = (1 + h.h0 - h.h1, 1 + h.h0 - h.h2)
    return CVector.from_mapping(_c_from_ab(a, b))


# -- permutations -------------------------------------------------------------

@dataclass(frozen=True)
class Permutation10:
    """image[i] is the position that the entry at position i is moved to."""

    image: tuple

    def __post_init__(self):
        if sorted(self.image) != list(range(10)):
            raise ValueError("not a permutation of ten positions")

    @classmethod
    def identity(cls):
        return cls(tuple(range(10)))

    @classmethod
    def from_cycles(cls, *cycles):
        img = list(range(10))
        for cyc in cycles:
            pos = [_POS[lab] for lab in cyc]
            for i, p in enumerate(pos):
                img[p] = pos[(i + 1) % len(pos)]
        return cls(tuple(img))

    def __mul__(self, other: "Permutation10") -> "Permutation10":
        """self * other acts as other first, then self."""
        return Permutation10(tuple(self.image[other.image[i]] for i in range(10)))

    def inverse(self):
        inv = [0] * 10
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation10(tuple(inv))

    @property
    def is_identity(self):
        return self.image == tuple(range(10))

    def order(self):
        p, k = self, 1
        while not p.is_identity:
            p, k = p * self, k + 1
        return k

    def moves(self, label) -> bool:
        return self.image[_POS[label]] != _POS[label]

    def act(self, c: CVector) -> CVector:
        out = [None] * 10
        for i, x in enumerate(c.entries):
            out[self.image[i]] = x
        return CVector(tuple(out), c.validate)


def generators():
    """The four involutions a1, a2, b, h as a name -> permutation mapping."""
    return {
        "a1": Permutation10.from_cycles(("11", "31"), ("12", "32"), ("13", "33")),
        "a2": Permutation10.from_cycles(("21", "31"), ("22", "32"), ("23", "33")),
        "b": Permutation10.from_cycles(("12", "13"), ("22", "23"), ("32", "33")),
        "h": Permutation10.from_cycles(("00", "22"), ("11", "33"), ("13", "31")),
    }


class GroupClosureError(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupTable:
    elements: tuple      # permutations in breadth-first order, identity first
    words: tuple         # shortest generator word for each element (applied left to right)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p):
        return p in self._index

    @property
    def _index(self):
        return {p: i for i, p in enumerate(self.elements)}

    @property
    def max_word_length(self):
        return max(len(w) for w in self.words)


def generate_group(cap=3628800) -> GroupTable:
    gens = generators()
    e = Permutation10.identity()
    seen = {e: ()}
    order = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for name, s in gens.items():
            x = s * g
            if x not in seen:
                seen[x] = seen[g] + (name,)
                order.append(x)
                queue.append(x)
                if len(order) > cap:
                    raise GroupClosureError(f"closure exceeded {cap} elements")
    return GroupTable(tuple(order), tuple(seen[g] for g in order))


# -- orbits and typing ----------------------------------------------------------

def is_demi_integral(c: CVector) -> bool:
    """c00, c21, c33 in Z+1/2 and c22, c31 in Z; cross-checked against the c'' typing."""
    def half_odd(x):
        return x.denominator == 2

    def integral(x):
        return x.denominator == 1

    p = all(half_odd(c[k]) for k in ("00", "21", "33")) and all(integral(c[k]) for k in ("22", "31"))
    q = all(half_odd(c[k]) for k in ("13", "12", "32")) and all(integral(c[k]) for k in ("11", "23"))
    if p != q:
        raise StructuralError("c' and c'' typings disagree")
    return p


@dataclass(frozen=True)
class OrbitElement:
    c: CVector
    perm: Permutation10
    word: tuple
    admissible: bool
    demi_integral: bool


def orbit(c: CVector, group: GroupTable | None = None):
    """Distinct images sigma c in breadth-first group order, each with its first (shortest) sigma."""
    group = group or generate_group()
    seen = set()
    out = []
    for g, w in zip(group.elements, group.words):
        img = g.act(c)
        if img.entries in seen:
            continue
        seen.add(img.entries)
        out.append(OrbitElement(img, g, w, img.admissible, is_demi_integral(img)))
    return out


# -- Gamma normalizer and stability ---------------------------------------------

def pi_product(c: CVector) -> GammaExact:
    """Gamma(c00) Gamma(c21) Gamma(c22) Gamma(c33) Gamma(c31), exactly."""
    out = GammaExact(Fraction(1), 0)
    for lab in PRIME_LABELS:
        try:
            out = out * gamma_exact(c[lab])
        except GammaPoleError:
            raise GammaPoleError(f"Gamma pole at c{lab} = {c[lab]}") from None
    return out


@dataclass(frozen=True)
class StabilityResult:
    residual: mpmath.mpf
    radius: mpmath.mpf
    sqrt_pi_shift: int      # sqrt(pi) exponent of Pi(sigma c) / Pi(c)


def stability_check(c: CVector, sigma: Permutation10, precision_bits=256) -> StabilityResult:
    """|H(c)/Pi(c) - H(sigma c)/Pi(sigma c)| with both series enclosed exactly."""
    sc = sigma.act(c)
    for vec in (c, sc):
        bad = [lab for lab in LABELS if vec[lab] <= 0]
        if bad:
            raise ValueError(f"stability check needs all entries > 0; c{bad[0]} = {vec[bad[0]]}")
    shift = pi_product(sc).sqrt_pi_power - pi_product(c).sqrt_pi_power
    if sc.entries == c.entries:
        return StabilityResult(mpmath.mpf(0), mpmath.mpf(0), shift)
    vals = []
    for vec in (c, sc):
        lead, enc = h_beta_exact(vec.as_dict(), precision_bits + 16)
        vals.append((lead / pi_product(vec), enc))
    (f1, e1), (f2, e2) = vals
    with mpmath.workprec(precision_bits + 32):
        if f1.sqrt_pi_power == f2.sqrt_pi_power:
            # common sqrt(pi) factor: compare rationally, then scale once
            common = mpmath.sqrt(mpmath.pi) ** f1.sqrt_pi_power
            diff = f1.rational_part * e1.center - f2.rational_part * e2.center
            residual = abs(frac_to_mpf(diff)) * common
            radius = frac_to_mpf(abs(f1.rational_part) * e1.radius + abs(f2.rational_part) * e2.radius) * common
        else:
            v1, v2 = f1.to_mpf(), f2.to_mpf()
            residual = abs(v1 * frac_to_mpf(e1.center) - v2 * frac_to_mpf(e2.center))
            radius = abs(v1) * frac_to_mpf(e1.radius) + abs(v2) * frac_to_mpf(e2.radius)
    return StabilityResult(residual, radius, shift)


def m_params(c: CVector):
    """(M, m1, m2): M = c22 + c31, m1 >= m2 the two largest entries of 2c."""
    if not is_demi_integral(c):
        raise ValueError("m_params needs a demi-integral parameter set")
    M = c["22"] + c["31"]
    doubled = sorted((2 * x for x in c.entries), reverse=True)
    return int(M), int(doubled[0]), int(doubled[1])


# -- integer relations -----------------------------------------------------------

class InconclusiveRelation(ArithmeticError):
    pass


@dataclass(frozen=True)
class RelationResult:
    status: str                 # "found", "none" or "inconclusive"
    p: Fraction | None = None
    q: Fraction | None = None
    coeffs: tuple | None = None  # (a, b, c) with a H + b G + c = 0
    residual: mpmath.mpf | None = None
    detail: str = ""

    @property
    def pair(self):
        return (self.p, self.q) if self.status == "found" else None


def _as_cert(x, bits):
    if isinstance(x, CertifiedReal):
        return x
    if isinstance(x, Fraction):
        with mpmath.workprec(bits + 32):
            return CertifiedReal(frac_to_mpf(x), mpmath.mpf(0), bits)
    return CertifiedReal(mpmath.mpf(x), mpmath.mpf(0), bits)


def detect_relation(H, G, denominator_cap=10**12, precision_bits=None) -> RelationResult:
    """Search H = p G + q with LLL on the lattice spanned by (1,0,0,S H), (0,1,0,S G), (0,0,1,S).

    A candidate counts only if |aH + bG + c| is within the certified error of
    the inputs. If the reduced vector is not much shorter than a generic
    lattice vector the search is inconclusive.
    """
    bits = precision_bits or min(getattr(H, "bits", 256), getattr(G, "bits", 256))
    H, G = _as_cert(H, bits), _as_cert(G, bits)
    with mpmath.workprec(bits + 64):
        err = max(H.radius, G.radius, mpmath.mpf(2) ** -bits)
        usable = int(-mpmath.log(err, 2)) - 4
        if usable < 32:
            raise InconclusiveRelation("inputs carry fewer than 32 certified bits")
        S = mpmath.mpf(2) ** usable
        basis = [[1, 0, 0, int(mpmath.nint(S * H.value))],
                 [0, 1, 0, int(mpmath.nint(S * G.value))],
                 [0, 0, 1, int(S)]]
        red = lll_reduce(basis)
        # generic vectors of this lattice have length about 2^(usable/3)
        height_limit = 2 ** (usable // 3 - 12)
        for v in red:
            a, b, c = v[:3]
            if a == 0:
                continue
            height = max(abs(a), abs(b), abs(c))
            if height > height_limit:
                break
            resid = abs(a * H.value + b * G.value + c)
            allowed = abs(a) * H.radius + abs(b) * G.radius + height * mpmath.mpf(2) ** -(bits + 16)
            if resid > allowed + mpmath.mpf(2) ** -(usable - 8):
                continue
            if a < 0:
                a, b, c = -a, -b, -c
            g = gcd(gcd(a, b), c)
            a, b, c = a // g, b // g, c // g
            p, q = Fraction(-b, a), Fraction(-c, a)
            if max(p.denominator, q.denominator) > denominator_cap:
                return RelationResult("none", coeffs=(a, b, c), residual=resid,
                                      detail=f"relation found but denominator exceeds cap {denominator_cap}")
            return RelationResult("found", p, q, (a, b, c), resid)
        shortest = max(abs(x) for x in red[0][:3])
        if shortest > height_limit:
            return RelationResult("inconclusive",
                                  detail=f"reduced basis has height {shortest}; need more precision")
        return RelationResult("none", detail="no relation survives verification")


# -- experimental denominator probe ---------------------------------------------

@dataclass(frozen=True)
class Probe24Row:
    c_prime: tuple
    M: int
    m1: int
    m2: int
    relation: RelationResult
    slack: int
    divides: bool | None          # None when no relation was resolved
    needed_slack: int | None      # least s making both denominators divide 2^(2M+s) D_m1 D_m2


def probe24(c: CVector, G, precision_bits=512, slack=8, denominator_cap=10**30) -> Probe24Row:
    """Resolve H(c) = pG + q and test denominators against 2^(2M+slack) D_m1 D_m2.

    Experimental evidence only: the inclusion is conjectural.
    """
    M, m1, m2 = m_params(c)
    H = h_beta_series(c.as_dict(), precision_bits)
    rel = detect_relation(H, G, denominator_cap, precision_bits)
    if rel.status != "found":
        return Probe24Row(c.prime, M, m1, m2, rel, slack, None, None)
    D = lcm_upto_or_one(m1) * lcm_upto_or_one(m2)
    den = rel.p.denominator * rel.q.denominator // gcd(rel.p.denominator, rel.q.denominator)
    if D % odd_part(den):
        needed = None
    else:
        needed = max(0, ord2(den) - ord2(D) - 2 * M)
    bound = 2 ** (2 * M + slack) * D
    return Probe24Row(c.prime, M, m1, m2, rel, slack, bound % den == 0, needed)


def section1_c(n):
    """c for the parameter family behind the first sequence: c' = (n-1/2, n-1/2, n, n-1/2, n)."""
    h = Fraction(1, 2)
    return CVector.from_prime(n - h, n - h, n, n - h, n)


def euler_cvector(n):
    from .hyper_eval import euler_c

    e = euler_c(n)
    a2 = e["21"] + 1
    b2 = e["22"] + a2 + 1
    a3 = e["31"] + 1
    b3 = e["33"] + a3 + 1
    c00 = b2 + b3 - (e["11"] + 1) - a2 - a3 - 1
    return CVector.from_prime(c00, e["21"], e["22"], e["33"], e["31"])
