from fractions import Fraction

import mpmath
import pytest

from catalan_forms.cf_catalan import CFExpansion, convergent, cf_vs_recursion, digits_report, p_poly, pq_eval, q_poly
from catalan_forms.recurrence import tilde_sequences


def test_pq_examples():
    assert q_poly(2) == 1035
    assert p_poly(3) == 1062720
    assert p_poly(2) == 0
    assert pq_eval(3) == (1062720, q_poly(3))
    with pytest.raises(ValueError):
        pq_eval(0)


def test_convergent_examples():
    assert convergent(0) == 5
    assert convergent(1) == Fraction(1897, 345)
    u, v = tilde_sequences(2)
    assert 6 * v[2] / u[2] == Fraction(1897, 345)
    with pytest.raises(ValueError):
        convergent(-1)


def test_backward_equals_forward():
    for N in range(0, 101):
        assert convergent(N) == convergent(N, method="forward")


def test_matches_recursion_up_to_100():
    rows, first_bad = cf_vs_recursion(100)
    assert first_bad is None and len(rows) == 100 and all(r.equal for r in rows)


def test_negative_control():
    cf = CFExpansion(q=lambda n: q_poly(n) + (1 if n == 4 else 0))
    _, first_bad = cf_vs_recursion(10, cf)
    assert first_bad == 2


def test_digits(G_ref):
    assert digits_report(0, G_ref) >= 0
    assert digits_report(1, G_ref) >= 2
    assert digits_report(20, G_ref) >= 35
    # about 2.09 digits per step
    d50 = digits_report(50, G_ref)
    assert 95 <= d50 <= 115


def test_convergents_alternate(G_ref):
    with mpmath.workprec(2400):
        signs = [mpmath.sign(mpmath.mpf(c.numerator) / c.denominator - 6 * G_ref)
                 for c in (convergent(N) for N in range(1, 51))]
    assert all(a == -b for a, b in zip(signs, signs[1:]))
