from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from monodimer.algebra import MultiPoly
from monodimer.series import (POLYS, RATIONALS, Series, SeriesError, coeff_extract, series_exp,
                              series_log1p, series_mul, series_pow, series_shift_div)

d = MultiPoly.d()


def S(coeffs, N, var="p"):
    return Series([Fraction(c) for c in coeffs], N, RATIONALS, var)


def test_mul_examples():
    assert series_mul(S([1, 1], 2, "x"), S([1, -1], 2, "x")) == S([1, 0, -1], 2, "x")
    half_p = Series.monomial(d**-1 * Fraction(1, 2), 1, 3, POLYS)
    assert (half_p * half_p)[2] == Fraction(1, 4) * d**-2
    assert S([0, 1], 1, "x") * S([0, 1], 1, "x") == S([0, 0], 1, "x")


def test_mixed_orders_rejected():
    with pytest.raises(SeriesError):
        S([1], 2) * S([1], 3)
    with pytest.raises(SeriesError):
        S([1], 2, "x") + S([1], 2, "p")


def test_exp_examples():
    e = series_exp(S([0, 1], 4, "x"))
    assert e[2] == Fraction(1, 2)
    assert coeff_extract(e, 3) == Fraction(1, 6)
    assert series_exp(S([], 3)) == S([1], 3)
    with pytest.raises(SeriesError):
        series_exp(S([1, 1], 3))
    with pytest.raises(SeriesError):
        coeff_extract(e, 5)


def test_exp_of_l_term():
    # exp(L b_1 x/(2d)) with b_1 = d, coefficient of x
    from monodimer.symbolic_l import LControlled, LPoly, LRING
    a1 = LControlled(LPoly([0, d * (2 * d) ** -1]))
    e = series_exp(Series([LRING.zero, a1], 3, LRING, "x"))
    assert e[1] == LControlled(LPoly([0, Fraction(1, 2)]))


def test_log1p_examples():
    log = series_log1p(S([0, -1], 6))
    assert [log[k] for k in range(1, 7)] == [Fraction(-1, k) for k in range(1, 7)]
    assert series_log1p(S([], 4)).is_zero()
    with pytest.raises(SeriesError):
        series_log1p(S([2], 3))


def test_pow_examples():
    geo = series_pow(S([1, -1], 5), -1)
    assert geo == S([1] * 6, 5)
    catalan_f = series_pow(S([1, -1], 6), -2)
    assert list(catalan_f.coeffs) == [1, 2, 3, 4, 5, 6, 7]
    assert series_pow(S([3, 1, 4], 4), 0) == S([1], 4)
    with pytest.raises(SeriesError):
        series_pow(Series([MultiPoly.b(2)], 3, POLYS), -1)


def test_shift_div_examples():
    assert series_shift_div(S([0, 0, 1], 4), 1) == S([0, 1], 3)
    s = Series([0, 0, 4, 6], 3, RATIONALS)      # 2*(2 alpha_2 + 3 alpha_3)-like
    assert series_shift_div(s, 1).valuation() == 1
    with pytest.raises(SeriesError):
        series_shift_div(S([1, 1], 3), 1)


# sympy as an independent oracle for exp and log

def _sym(s):
    x = sp.Symbol("x")
    return sum(sp.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(s.coeffs)), x


_coeffs = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=1, max_size=6)


@settings(max_examples=20, deadline=None)
@given(_coeffs)
def test_exp_log_against_sympy(cs):
    N = 6
    s = S([0] + cs, N, "x")
    expr, x = _sym(s)
    want_exp = sp.series(sp.exp(expr), x, 0, N + 1).removeO()
    want_log = sp.series(sp.log(1 + expr), x, 0, N + 1).removeO()
    got_exp, got_log = series_exp(s), series_log1p(s)
    for k in range(N + 1):
        assert got_exp[k] == Fraction(str(want_exp.coeff(x, k)))
        assert got_log[k] == Fraction(str(want_log.coeff(x, k)))


@settings(max_examples=40, deadline=None)
@given(_coeffs, _coeffs)
def test_exp_log_properties(cs, ts):
    N = 7
    s, t = S([0] + cs, N), S([0] + ts, N)
    assert series_log1p(series_exp(s) - 1) == s
    assert series_exp(series_log1p(s)) == 1 + s
    assert series_exp(s + t) == series_exp(s) * series_exp(t)


@settings(max_examples=40, deadline=None)
@given(_coeffs, st.integers(0, 5))
def test_pow_consistency(cs, k):
    s = S(cs, 6)
    prod = S([1], 6)
    for _ in range(k):
        prod = prod * s
    assert series_pow(s, k) == prod


@settings(max_examples=40, deadline=None)
@given(_coeffs, _coeffs, st.integers(1, 7))
def test_truncation_coherence(cs, ts, M):
    N = 8
    s, t = S([0] + cs, N), S([1] + ts, N)
    sM, tM = s.truncate(M), t.truncate(M)
    assert (s * t).truncate(M) == sM * tM
    assert (s + t).truncate(M) == sM + tM
    assert series_exp(s).truncate(M) == series_exp(sM)
    assert series_log1p(s).truncate(M) == series_log1p(sM)
    assert series_pow(t, -3).truncate(M) == series_pow(tM, -3)
    assert series_pow(s, 3).truncate(M) == series_pow(sM, 3)
    assert series_shift_div(s, 1).truncate(M - 1) == series_shift_div(sM, 1)
