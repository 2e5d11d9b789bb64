"""
Finite-order checks: the Catalan special case, the closed forms around it,
the triangularity property of the four maps, and h = g o f.

Nothing here proves anything beyond the order it was run at. A refutation
always carries the first failing index and the full residual polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Mapping, Sequence

from .algebra import MultiPoly
from .expression_one import a_coeffs
from .expression_two import a_prime_coeffs, invert_mayer, q2_second
from .series import POLYS, RATIONALS, Series, series_inverse, series_log1p
from .symbolic_l import Divergence
from .transforms import BSequence, ConsistencyError, JSequence, b_from_jbar, jbar_from_b

CLAIMS = ("master", "catalan", "catalan-part1", "catalan-part2", "catalan-part3",
          "e-closed-form", "catalan-gf", "triangularity")
STATUSES = ("verified", "refuted", "divergence")
CAVEAT = "finite-order evidence only; this is not a proof"

D = MultiPoly.d()


@dataclass(frozen=True)
class Witness:
    k: int
    residual: MultiPoly
    label: str = ""


@dataclass(frozen=True)
class Verdict:
    claim: str
    order: int
    status: str
    witness: Witness | None = None
    label: str = ""
    residuals: tuple[tuple[int, MultiPoly], ...] = ()
    checks: tuple["Verdict", ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise ValueError(f"unknown claim {self.claim!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == "refuted") != (self.witness is not None):
            raise ValueError("a witness is present exactly when the claim is refuted")

    @property
    def ok(self) -> bool:
        return self.status == "verified"


def _from_residuals(claim, order, residuals, label="", notes=()) -> Verdict:
    residuals = tuple(residuals)
    for k, res in residuals:
        if res:
            return Verdict(claim, order, "refuted", Witness(k, res, label), label, residuals, (), notes)
    return Verdict(claim, order, "verified", None, label, residuals, (), notes)


def _combine(claim, order, checks, notes=()) -> Verdict:
    checks = tuple(checks)
    for c in checks:
        if c.status != "verified":
            return Verdict(claim, order, c.status, c.witness, c.label, (), checks, notes)
    return Verdict(claim, order, "verified", None, "", (), checks, notes)


def _series_residuals(lhs: Series, rhs: Series, start: int = 0):
    return [(k, MultiPoly.lift(lhs[k] - rhs[k])) for k in range(start, lhs.order + 1)]


Perturbation = tuple[int, Fraction]


# Catalan data

def catalan_number(n: int) -> int:
    return factorial(2 * n) // (factorial(n + 1) * factorial(n))


@dataclass(frozen=True)
class CatalanData:
    order: int
    catalans: tuple[int, ...]        # C_0 .. C_N
    btilde: BSequence                # btilde_1 .. btilde_N


def catalan_b(N: int) -> CatalanData:
    if N < 1:
        raise ValueError("order must be at least 1")
    cats = tuple(catalan_number(n) for n in range(N + 1))
    vals = []
    for n in range(1, N + 1):
        c = Fraction(-((-1) ** n) * 2 ** (n - 1) * cats[n], n)
        vals.append(D ** n * c)
    return CatalanData(N, cats, BSequence(tuple(vals)))


def perturbed(seq, perturb: Perturbation | None):
    """Copy of a b- or J-sequence with ``delta`` added to component ``k``."""
    if perturb is None:
        return seq
    k, delta = perturb
    if not 2 <= k <= seq.order:
        raise ValueError(f"perturbation index {k} outside 2..{seq.order}")
    vals = list(seq.values)
    vals[k - 1] = vals[k - 1] + Fraction(delta)
    return type(seq)(tuple(vals))


# binomial-series oracles

def sqrt_one_plus(c: Fraction, N: int) -> Series:
    """(1 + c x)^(1/2) by the binomial series."""
    coeffs = []
    binom = Fraction(1)
    for n in range(N + 1):
        coeffs.append(binom * Fraction(c) ** n)
        binom = binom * (Fraction(1, 2) - n) / (n + 1)
    return Series(coeffs, N, RATIONALS, "x")


def e_series(N: int) -> Series:
    """sum_i btilde_i (x/2d)^i; the powers of d cancel term by term."""
    data = catalan_b(N)
    coeffs = [Fraction(0)]
    for i in range(1, N + 1):
        term = data.btilde[i] * (2 * D) ** (-i)
        if not term.is_constant():
            raise ConsistencyError(f"d did not cancel in term {i}: {term}")
        coeffs.append(term.constant())
    return Series(coeffs, N, RATIONALS, "x")


def e_closed_form(N: int) -> Series:
    """1/(1+s) + log(1+s) - 1/2 - log 2 with s = (1+4x)^(1/2).

    Writing 1 + s = 2(1 + t), t = (s-1)/2, the log 2 terms cancel exactly.
    """
    t = (sqrt_one_plus(4, N) - 1) * Fraction(1, 2)
    return series_inverse(1 + t) * Fraction(1, 2) + series_log1p(t) - Fraction(1, 2)


def catalan_gf_closed_form(N: int) -> Series:
    """2/(1 + (1-4x)^(1/2)) = 1/(1 + t), t = ((1-4x)^(1/2) - 1)/2."""
    t = (sqrt_one_plus(-4, N) - 1) * Fraction(1, 2)
    return series_inverse(1 + t)


def verify_e_closed_form(N: int) -> Verdict:
    res = _series_residuals(e_series(N), e_closed_form(N))
    return _from_residuals("e-closed-form", N, res, "sum btilde_i (x/2d)^i vs closed form")


def verify_catalan_gf(N: int) -> Verdict:
    cats = Series([catalan_number(n) for n in range(N + 1)], N, RATIONALS, "x")
    res = _series_residuals(cats, catalan_gf_closed_form(N))
    return _from_residuals("catalan-gf", N, res, "sum C_n x^n vs 2/(1+(1-4x)^(1/2))")


# Catalan special case

def _p_series(coeffs, N):
    return Series([MultiPoly.lift(c) for c in coeffs], N, POLYS)


def verify_catalan(N: int, perturb: Perturbation | None = None,
                   perturb_j: Perturbation | None = None) -> Verdict:
    """Part 1 (g(0) = 0), part 2 (h(btilde) = 0) and the closed forms of
    z(p), P(p) and 1 + F along the way."""
    if N < 2:
        raise ValueError("order must be at least 2")
    zero_j = perturbed(JSequence.zeros(N), perturb_j)
    a = a_coeffs(zero_j, N)
    part1 = _from_residuals("catalan-part1", N, [(k, a[k]) for k in range(2, N + 1)],
                            "a_k from J = 0")

    bt = perturbed(catalan_b(N).btilde, perturb)
    q2 = q2_second(bt, N)
    part2 = _from_residuals("catalan-part2", N, [(k, q2[k]) for k in range(N + 1)],
                            "Q_2 from btilde")

    inv = invert_mayer(bt, N)
    # z = p / (2d (1-p)^2): coefficient of p^n is n / (2d)
    z_expected = _p_series([0] + [D ** -1 * Fraction(n, 2) for n in range(1, N + 1)], N)
    # P = -p/2 - log(1-p)
    p_expected = _p_series([0, Fraction(1, 2)] + [Fraction(1, n) for n in range(2, N + 1)], N)
    # 1 + F = (1-p)^-2
    f_expected = _p_series([0] + [n + 1 for n in range(1, N)], N - 1)
    closed = [
        _from_residuals("catalan-part2", N, _series_residuals(inv.z_of_p, z_expected),
                        "z(p) = p/(2d(1-p)^2)"),
        _from_residuals("catalan-part2", N, _series_residuals(inv.pressure, p_expected),
                        "P(p) = -p/2 - log(1-p)"),
        _from_residuals("catalan-part2", N, _series_residuals(inv.f_factor, f_expected),
                        "1 + F(p) = (1-p)^-2"),
    ]
    return _combine("catalan", N, [part1, part2] + closed)


def verify_part3(R: int, perturb: Perturbation | None = None) -> Verdict:
    """J_r computed from btilde must vanish for r <= R."""
    if R < 2:
        raise ValueError("order must be at least 2")
    bt = perturbed(catalan_b(R).btilde, perturb)
    notes = (CAVEAT,)
    try:
        j = jbar_from_b(bt)
    except (Divergence, ConsistencyError) as exc:
        return Verdict("catalan-part3", R, "divergence", label=str(exc), notes=notes)
    return _from_residuals("catalan-part3", R, [(r, j[r]) for r in range(1, R + 1)],
                           "J_r from btilde", notes)


# the master conjecture

def verify_master(N: int, perturb: Perturbation | None = None) -> Verdict:
    """h o f^-1 = g on symbolic J, and h = g o f on symbolic b.

    ``perturb`` shifts one component of the b-sequence fed to h (a negative
    control); the residual should then first appear at that index.
    """
    if N < 2:
        raise ValueError("order must be at least 2")
    notes = [CAVEAT]
    try:
        j_sym = JSequence.symbolic(N)
        b_sym = BSequence.symbolic(N)
        a = a_coeffs(j_sym, N)
        a_prime = a_prime_coeffs(perturbed(b_sym, perturb), N)

        # h o f^-1 = g
        b_of_j = b_from_jbar(j_sym).bindings()
        composed = {k: a_prime[k].substitute(b_of_j) for k in range(1, N + 1)}
        route57 = _from_residuals("master", N, [(k, a[k] - composed[k]) for k in range(1, N + 1)],
                                  "a_k - a'_k(b(J))")
        dfree = [(k, _d_dependent_part(composed[k])) for k in range(1, N + 1)]
        dcheck = _from_residuals("master", N, dfree, "d-dependence of a'_k(b(J))")

        # h = g o f
        j_of_b = jbar_from_b(b_sym).bindings()
        route58 = _from_residuals(
            "master", N,
            [(k, a[k].substitute(j_of_b) - a_prime[k]) for k in range(1, N + 1)],
            "a_k(J(b)) - a'_k")
    except (Divergence, ConsistencyError) as exc:
        return Verdict("master", N, "divergence", label=str(exc), notes=tuple(notes))
    out = _combine("master", N, [route57, dcheck, route58], tuple(notes))
    if out.ok:
        return Verdict("master", N, "verified", label="a_k - a'_k(b(J))",
                       residuals=route57.residuals, checks=out.checks, notes=out.notes)
    return out


def _d_dependent_part(p: MultiPoly) -> MultiPoly:
    parts = p.coefficients_in("d")
    out = MultiPoly.zero()
    for e, c in parts.items():
        if e:
            out = out + c * D ** e
    return out


# triangularity

MapTable = tuple[str, Sequence[MultiPoly]]   # (input kind "b" or "J", components 1..N)


def standard_maps(N: int) -> dict[str, MapTable]:
    b_sym = BSequence.symbolic(N)
    j_sym = JSequence.symbolic(N)
    f = jbar_from_b(b_sym)
    g = a_coeffs(j_sym, N)
    fb = f.bindings()
    return {
        "f": ("b", f.values),
        "f^-1": ("J", b_from_jbar(j_sym).values),
        "g": ("J", g.values),
        "h": ("b", a_prime_coeffs(b_sym, N).values),
        "g o f": ("b", tuple(v.substitute(fb) for v in g.values)),
    }


def _excess_part(p: MultiPoly, kind: str, i: int) -> MultiPoly:
    """Terms of ``p`` involving ``{kind}s`` with s > i."""
    out = MultiPoly.zero()
    for mono, c in p.monomials():
        exps = mono.b_exps if kind == "b" else mono.j_exps
        if any(s > i for s, _ in exps):
            out = out + MultiPoly.from_terms([(mono, c)])
    return out


def triangularity_check(N: int, maps: Mapping[str, MapTable] | None = None,
                        perturb: Perturbation | None = None) -> Verdict:
    """Component i of every map may only involve inputs with index <= i."""
    if N < 2:
        raise ValueError("order must be at least 2")
    maps = dict(maps if maps is not None else standard_maps(N))
    if perturb is not None:
        k, delta = perturb
        kind, comps = maps["f"]
        comps = list(comps)
        comps[k - 1] = comps[k - 1] + MultiPoly.symbol(f"{kind}{k + 1}") * Fraction(delta)
        maps["f"] = (kind, tuple(comps))
    checks = []
    for name, (kind, comps) in maps.items():
        res = [(i, _excess_part(p, kind, i)) for i, p in enumerate(comps, 1)]
        checks.append(_from_residuals("triangularity", N, res, name))
    return _combine("triangularity", N, checks)
