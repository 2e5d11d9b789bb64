import random
from fractions import Fraction

import pytest

from monodimer.algebra import MultiPoly
from monodimer.expression_one import a_coeffs
from monodimer.expression_two import a_prime_coeffs
from monodimer.transforms import BSequence, jbar_from_b
from monodimer.verification import (CAVEAT, Verdict, Witness, catalan_b, catalan_gf_closed_form,
                                    catalan_number, e_closed_form, e_series, standard_maps,
                                    triangularity_check, verify_catalan, verify_catalan_gf,
                                    verify_e_closed_form, verify_master, verify_part3)

d = MultiPoly.d()


def test_catalan_numbers():
    assert [catalan_number(n) for n in range(5)] == [1, 1, 2, 5, 14]


def test_catalan_b_examples():
    data = catalan_b(5)
    assert data.btilde[1] == d
    assert data.btilde[2] == -2 * d**2
    assert data.btilde[5] == Fraction(16, 5) * 42 * d**5 == Fraction(672, 5) * d**5
    assert data.catalans[4] == 14


def test_e_series_examples():
    e = e_series(8)
    assert e[1] == Fraction(1, 2)
    assert e[2] == Fraction(-1, 2)
    assert e[3] == Fraction(5, 6)
    assert e == e_closed_form(8)


def test_catalan_generating_function():
    gf = catalan_gf_closed_form(10)
    assert [gf[n] for n in range(11)] == [catalan_number(n) for n in range(11)]
    assert verify_catalan_gf(20).ok
    assert verify_e_closed_form(20).ok


def test_verdict_invariant():
    with pytest.raises(ValueError):
        Verdict("master", 3, "refuted")
    with pytest.raises(ValueError):
        Verdict("master", 3, "verified", Witness(2, MultiPoly.one()))
    with pytest.raises(ValueError):
        Verdict("nonsense", 3, "verified")


def test_verify_catalan():
    v = verify_catalan(6)
    assert v.ok
    part2 = [c for c in v.checks if c.label == "Q_2 from btilde"][0]
    assert all(r == 0 for _, r in part2.residuals)


def test_verify_catalan_negative_control():
    v = verify_catalan(6, perturb=(3, Fraction(1)))
    assert v.status == "refuted"
    assert v.witness.k == 3
    v = verify_catalan(6, perturb_j=(4, Fraction(1, 2)))
    assert v.status == "refuted" and v.witness.k == 4


def test_verify_part3():
    v = verify_part3(10)
    assert v.ok and CAVEAT in v.notes
    assert [k for k, _ in v.residuals] == list(range(1, 11))
    v = verify_part3(6, perturb=(5, Fraction(2)))
    assert v.status == "refuted" and v.witness.k == 5
    assert v.witness.residual == Fraction(2, 32) * d**-5


def test_part3_hand_checks():
    # J_2 and J_3 at btilde_2 = -2d^2, btilde_3 = (20/3) d^3
    assert Fraction(1, 24) * (3 * Fraction(20, 3) + 24 * (-2) + 28) == 0
    j = jbar_from_b(catalan_b(3).btilde)
    assert j[2] == 0 and j[3] == 0


@pytest.mark.parametrize("N", [2, 3, 6])
def test_verify_master_small(N):
    v = verify_master(N)
    assert v.ok, v.witness
    assert CAVEAT in v.notes
    assert all(r == 0 for _, r in v.residuals)


@pytest.mark.parametrize("k", [2, 4, 6])
def test_verify_master_negative_control(k):
    v = verify_master(6, perturb=(k, Fraction(1)))
    assert v.status == "refuted"
    assert v.witness.k == k


def test_master_numeric_consistency():
    # when h = g o f holds, numeric a_k and a'_k agree exactly at random rational points
    rng = random.Random(7)
    N = 6
    for _ in range(3):
        dv = Fraction(rng.randint(1, 5))
        vals = [Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(N - 1)]
        b = BSequence((d,) + tuple(MultiPoly.const(v) for v in vals))
        a = a_coeffs(jbar_from_b(b), N)
        a_prime = a_prime_coeffs(b, N)
        for k in range(1, N + 1):
            assert a[k].eval(dv) == a_prime[k].eval(dv)


def test_triangularity():
    assert triangularity_check(6).ok


def test_triangularity_negative_control():
    maps = {"bad": ("b", (MultiPoly.zero(), MultiPoly.b(2), MultiPoly.b(2) * MultiPoly.b(4)))}
    v = triangularity_check(3, maps)
    assert v.status == "refuted"
    assert v.witness.k == 3 and v.witness.label == "bad"
    v = triangularity_check(5, perturb=(2, Fraction(1)))
    assert v.status == "refuted" and v.witness.k == 2


def test_composition_is_triangular():
    maps = standard_maps(6)
    kind, comps = maps["g o f"]
    assert kind == "b"
    assert all(c.max_index("b") <= i for i, c in enumerate(comps, 1))
