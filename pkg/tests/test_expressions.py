from fractions import Fraction

import pytest
import sympy as sp

from golden import G_TABLE, H_TABLE
from monodimer.algebra import MultiPoly
from monodimer.expression_one import a_coeffs, alpha_fixed_point, q2_first, _sweep
from monodimer.expression_two import (a_prime_coeffs, invert_mayer, mayer_sum, pressure_series,
                                      q2_second)
from monodimer.series import POLYS, Series
from monodimer.transforms import BSequence, JSequence
from monodimer.verification import catalan_b

d = MultiPoly.d()
J2, J3 = MultiPoly.J(2), MultiPoly.J(3)


@pytest.fixture(scope="module")
def g8():
    return a_coeffs(JSequence.symbolic(8), 8)


@pytest.fixture(scope="module")
def h8():
    return a_prime_coeffs(BSequence.symbolic(8), 8)


# expression one

def test_alpha_zero_fixed_point():
    sys_ = alpha_fixed_point(JSequence.zeros(6), 6)
    assert all(a.is_zero() for a in sys_.alphas.values())


def test_alpha_lowest_orders():
    a2 = alpha_fixed_point(JSequence.symbolic(2), 2).alphas[2]
    assert a2 == Series.monomial(J2, 2, 2, POLYS)
    sys_ = alpha_fixed_point(JSequence.symbolic(6), 6)
    for k, a in sys_.alphas.items():
        assert a.valuation() == k
        assert a[k] == MultiPoly.J(k)


def test_alpha_stabilises():
    j = JSequence.symbolic(7)
    sys_ = alpha_fixed_point(j, 7)
    assert _sweep(j, sys_.alphas, 7) == sys_.alphas


def test_alpha_needs_enough_order():
    with pytest.raises(ValueError):
        alpha_fixed_point(JSequence.symbolic(3), 5)


def test_q2_first_examples():
    assert q2_first(alpha_fixed_point(JSequence.zeros(8), 8)).is_zero()
    q2 = q2_first(alpha_fixed_point(JSequence.symbolic(5), 5))
    assert q2[2] == J2
    assert q2[5] == G_TABLE[5]


@pytest.mark.parametrize("k", sorted(G_TABLE))
def test_first_golden(g8, k):
    assert g8[k] - G_TABLE[k] == 0


def test_first_structure(g8):
    assert g8[1] == 0
    for k in range(2, 9):
        assert g8[k].max_index("J") <= k
        assert g8[k].d_exponents() == {0}
        assert g8[k].max_index("b") == 0


# expression two

def test_mayer_inversion_examples():
    inv = invert_mayer(BSequence.symbolic(5), 5)
    assert inv.z_of_p[1] == Fraction(1, 2) * d**-1
    assert inv.z_of_p[2] == -Fraction(1, 2) * MultiPoly.b(2) * d**-3
    assert inv.f_factor[0] == 0
    assert inv.z_of_p.shift_div(1) * (2 * d) - 1 == inv.f_factor


def test_reversion_identity_symbolic():
    b = BSequence.symbolic(8)
    inv = invert_mayer(b, 8)
    assert mayer_sum(b, inv.z_of_p, lambda n: 2 * n) == Series.monomial(MultiPoly.one(), 1, 8, POLYS)


def test_catalan_z_matches_closed_form():
    inv = invert_mayer(catalan_b(8).btilde, 8)
    for n in range(1, 9):
        assert inv.z_of_p[n] == Fraction(n, 2) * d**-1


def test_pressure_examples():
    bt = catalan_b(8).btilde
    P = pressure_series(bt, invert_mayer(bt, 8))
    assert P[1] == Fraction(1, 2)
    assert all(P[k] == Fraction(1, k) for k in range(2, 9))
    b = BSequence.symbolic(4)
    assert pressure_series(b, invert_mayer(b, 4))[1] == Fraction(1, 2)
    single = BSequence((d, 0, 0, 0))
    P = pressure_series(single, invert_mayer(single, 4))
    assert P == Series.monomial(MultiPoly.const(Fraction(1, 2)), 1, 4, POLYS)


def test_q2_second_examples():
    assert q2_second(catalan_b(10).btilde, 10).is_zero()
    q2 = q2_second(BSequence.symbolic(4), 4)
    assert q2[2] == H_TABLE[2]
    assert q2[4] == H_TABLE[4]


@pytest.mark.parametrize("k", sorted(H_TABLE))
def test_second_golden(h8, k):
    assert h8[k] - H_TABLE[k] == 0


def test_second_structure(h8):
    assert h8[1] == 0
    for k in range(2, 9):
        assert h8[k].max_index("b") <= k
        assert h8[k].max_index("J") == 0


def _lagrange_z(bvals, dval, N):
    """Oracle: [p^n] z = (1/n) [w^(n-1)] (w / phi(w))^n with phi(w) = 2 sum k b_k w^k."""
    w = sp.Symbol("w")
    phi_over_w = 2 * sum(k * bvals[k] * w ** (k - 1) for k in range(1, N + 1))
    out = []
    for n in range(1, N + 1):
        expansion = sp.series((1 / phi_over_w) ** n, w, 0, n).removeO()
        out.append(sp.Rational(1, n) * sp.expand(expansion).coeff(w, n - 1))
    return out


@pytest.mark.parametrize("dval,extra", [(1, [3, -2, 5]), (2, [Fraction(1, 3), 7, -1]),
                                        (3, [-18, 60, -252])])
def test_reversion_against_lagrange_inversion(dval, extra):
    N = 4
    b = BSequence((d,) + tuple(MultiPoly.const(v) for v in extra))
    inv = invert_mayer(b, N)
    bvals = {1: sp.Integer(dval)}
    bvals.update({i: sp.Rational(str(v)) for i, v in enumerate(extra, 2)})
    want = _lagrange_z(bvals, dval, N)
    for n in range(1, N + 1):
        assert inv.z_of_p[n].eval(dval) == Fraction(str(want[n - 1]))
