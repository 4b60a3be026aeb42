from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catalan_forms.exact_arith import (
    QuarterInt, ceil_log2, int_poly_eval, lcm_upto, lcm_upto_or_one, lcm_valuations, odd_part, ord2,
)
from oracles import brute_lcm, sieve_primes


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 60), (10, 2520)])
def test_lcm_examples(n, expected):
    assert lcm_upto(n) == expected


def test_lcm_rejects_zero():
    with pytest.raises(ValueError):
        lcm_upto(0)
    assert lcm_upto_or_one(0) == 1 and lcm_upto_or_one(-1) == 1


def test_lcm_against_brute_force_and_sieve():
    for n in range(1, 201):
        D = lcm_upto(n)
        assert D == brute_lcm(n)
        assert all(D % k == 0 for k in range(1, n + 1))
        for p in sieve_primes(n):
            e = lcm_valuations(n)[p]
            assert p**e <= n < p ** (e + 1)
            assert D % p ** (e + 1) != 0


def test_ord2_examples():
    assert ord2(8) == 3
    assert ord2(Fraction(115, 2)) == -1
    assert ord2(lcm_upto(10)) == 3
    with pytest.raises(ValueError):
        ord2(0)


nonzero_rats = st.fractions().filter(lambda x: x != 0)


@given(nonzero_rats, nonzero_rats)
def test_ord2_is_a_homomorphism(x, y):
    assert ord2(x * y) == ord2(x) + ord2(y)
    assert ord2(x / y) == ord2(x) - ord2(y)


@given(st.integers(min_value=1, max_value=10**30))
def test_odd_part(k):
    o = odd_part(k)
    assert o % 2 == 1 and k % o == 0 and (k // o) & (k // o - 1) == 0


def test_ord2_of_lcm_is_floor_log2():
    for n in range(1, 300):
        assert ord2(lcm_upto(n)) == n.bit_length() - 1


def test_int_poly_eval_examples():
    assert int_poly_eval(0, QuarterInt(5)) == 1
    assert int_poly_eval(1, QuarterInt(3)) == Fraction(-1, 4)
    assert int_poly_eval(2, QuarterInt(7)) == Fraction(-3, 32)


def test_int_poly_eval_vanishes_on_small_integers():
    for n in range(1, 15):
        for t in range(1, n + 1):
            assert int_poly_eval(n, QuarterInt(4 * t)) == 0
            assert int_poly_eval(n, t) == 0


@given(st.integers(0, 12), st.integers(-200, 200))
def test_int_poly_eval_paths_agree(n, q):
    assert int_poly_eval(n, QuarterInt(q)) == int_poly_eval(n, Fraction(q, 4))


@given(st.integers(0, 12), st.integers(-50, 50))
def test_int_poly_eval_integer_valued(n, t):
    assert int_poly_eval(n, t).denominator == 1


def test_quarter_int_arithmetic():
    a, b = QuarterInt(3), QuarterInt.of(Fraction(1, 2))
    assert (a + b).as_fraction() == Fraction(5, 4)
    assert (a - 1).as_fraction() == Fraction(-1, 4)
    assert a.is_quarter_odd and b.is_half_odd and QuarterInt(8).is_integer
    assert QuarterInt(2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        QuarterInt.of(Fraction(1, 3))
    with pytest.raises(AttributeError):
        a.quadruple = 5


def test_ceil_log2():
    assert [ceil_log2(k) for k in (0, 1, 2, 3, 4, 5, 8, 9)] == [0, 0, 1, 2, 2, 3, 3, 4]
