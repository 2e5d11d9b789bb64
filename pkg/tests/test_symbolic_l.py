from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from monodimer.algebra import MultiPoly
from monodimer.symbolic_l import (Divergence, LControlled, LPoly, falling_factorial, lc_add,
                                  lc_mul, limit_at_infinity)
from monodimer.transforms import BSequence, NumericL, finite_l_kernels
from monodimer.verification import catalan_b

d, b2 = MultiPoly.d(), MultiPoly.b(2)
L = LPoly.L()


def lc(coeffs, a=0, b=0):
    return LControlled(LPoly(coeffs), a, b)


def test_add_examples():
    assert lc_add(lc([1], 1), lc([1], 1)) == lc([2], 1)
    s = lc_add(lc([0, 1], 0, 1), lc([-1], 0, 1))
    assert s == LControlled.one()
    assert lc_add(lc([0, 0, 1], 1, 1), LControlled.zero()) == lc([0, 0, 1], 1, 1)


def test_mul_examples():
    assert lc_mul(lc([1], 1), lc([0, 1])) == LControlled.one()
    half = lc([Fraction(-1, 2)], 0, 1)
    sq = lc_mul(half, half)
    assert sq == lc([Fraction(1, 4)], 0, 2)
    assert (sq.a_pow, sq.b_pow) == (0, 2)
    assert lc_mul(lc([b2], 1), lc([d])) == lc([d * b2], 1)


def test_unreduced_equality_cross_multiplies():
    one = LControlled(LPoly([-1, 1]), 0, 1, reduce=False)
    assert one.b_pow == 1
    assert one == LControlled.one()


def test_falling_factorial_examples():
    assert falling_factorial(2, 2) == LPoly.const(1)
    assert falling_factorial(2, 1) == LPoly([6, -5, 1])
    assert falling_factorial(1, 0) == LPoly([0, -1, 1])
    with pytest.raises(ValueError):
        falling_factorial(1, 2)


@pytest.mark.parametrize("r", range(0, 6))
def test_falling_factorial_matches_factorial_quotient(r):
    for p in range(r + 1):
        ff = falling_factorial(r, p)
        assert ff.degree == 2 * (r - p)
        assert ff.leading() == 1
        assert ff.eval(2 * r) == factorial(2 * r - 2 * p)
        for Lval in range(2 * r, 2 * r + 6):
            assert ff.eval(Lval) == factorial(Lval - 2 * p) // factorial(Lval - 2 * r)


def test_limit_examples():
    assert limit_at_infinity(lc([1, 0, 1], 1, 1)) == 1
    assert limit_at_infinity(lc([b2, 3], 2)) == 0
    with pytest.raises(Divergence):
        limit_at_infinity(LControlled(LPoly([0, 0, 0, 1]), 1, 1, reduce=False))


def test_eval():
    v = lc([1, 2], 1, 1)
    assert v.eval(3) == Fraction(7, 6)
    with pytest.raises(ZeroDivisionError):
        v.eval(1)


_lpolys = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=4), max_size=4)


@settings(max_examples=50, deadline=None)
@given(_lpolys, st.integers(0, 2), st.integers(0, 2), _lpolys, st.integers(0, 2),
       st.integers(0, 2), st.sampled_from([5, 7, 11, 13, Fraction(-3, 2)]))
def test_eval_is_a_homomorphism(n1, a1, b1, n2, a2, b2_, Lval):
    u, v = lc(n1, a1, b1), lc(n2, a2, b2_)
    assert (u + v).eval(Lval) == u.eval(Lval) + v.eval(Lval)
    assert (u * v).eval(Lval) == u.eval(Lval) * v.eval(Lval)
    assert (u - v).eval(Lval) == u.eval(Lval) - v.eval(Lval)


@pytest.mark.parametrize("Lval", [5, 7, 11, 13])
def test_symbolic_pipeline_agrees_with_fixed_l(Lval):
    # symbolic b: every JL_r, evaluated at L afterwards, equals the run with L fixed
    b = BSequence.symbolic(6)
    symbolic = finite_l_kernels(b)
    fixed = finite_l_kernels(b, NumericL(Lval))
    for r, (s, f) in enumerate(zip(symbolic, fixed), 1):
        assert s.eval(Lval) == f, f"JL_{r} at L={Lval}"


@settings(max_examples=10, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=4,
                max_size=4), st.sampled_from([5, 7, 11, 13]))
def test_fixed_l_differential_random_inputs(vals, Lval):
    b = BSequence((d,) + tuple(MultiPoly.const(v) for v in vals))
    for s, f in zip(finite_l_kernels(b), finite_l_kernels(b, NumericL(Lval))):
        assert s.eval(Lval) == f


def test_limit_is_approached_monotonically():
    # rational grounding: d = 2, random-ish b values
    b = BSequence((d, MultiPoly.const(3), MultiPoly.const(-5), MultiPoly.const(Fraction(7, 2)),
                   MultiPoly.const(1)))
    kernels = finite_l_kernels(b)
    for r, v in enumerate(kernels[1:], 2):
        lim = limit_at_infinity(v).eval(2)
        gaps = [abs(v.eval(Lval).eval(2) - lim) for Lval in (10**3, 10**4, 10**5, 10**6)]
        assert all(x >= y for x, y in zip(gaps, gaps[1:])), r
        assert gaps[-1] < Fraction(1, 10**3)


def test_kernels_have_finite_limits_at_catalan_point():
    for v in finite_l_kernels(catalan_b(8).btilde):
        assert v.excess_degree() <= 0
