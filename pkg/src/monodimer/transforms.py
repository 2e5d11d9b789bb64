"""
The maps between Mayer coefficients ``b`` and cluster kernels ``J``.

Forward (``jbar_from_b``): for r >= 2

    JL_r = (1/L) * ( S_r - [x^r] exp(L * sum_{i<r} JL_i x^i) )
    S_r  = sum_{q=0}^{r} [x^q] exp(L * sum_i b_i (x/2d)^i)
                         * (-1/(2(L-1)))^(r-q) / (r-q)! * (L-2q)!/(L-2r)!

and ``J_r = lim_{L->oo} JL_r``. The summation index is called ``q`` here
because ``p`` is the dimer density everywhere else.

Inverse (``b_from_jbar``): ``JL_r`` depends on ``b_r`` only through the
term ``b_r / (2d)^r``, so each ``b_r`` solves a linear equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .algebra import MultiPoly
from .series import exp_next
from .symbolic_l import LControlled, LPoly, Divergence, falling_factorial, limit_at_infinity

D = MultiPoly.d()


class ConsistencyError(ArithmeticError):
    """An internal identity that must hold exactly did not."""


def _as_poly(v) -> MultiPoly:
    return MultiPoly.lift(v)


@dataclass(frozen=True)
class BSequence:
    """``b_1 .. b_N`` with ``b_1 = d``."""

    values: tuple[MultiPoly, ...]

    def __post_init__(self):
        vals = tuple(_as_poly(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("empty b-sequence")
        if vals[0] != D:
            raise ValueError(f"b_1 must equal d, got {vals[0]}")

    @classmethod
    def symbolic(cls, order: int) -> "BSequence":
        return cls((D,) + tuple(MultiPoly.b(i) for i in range(2, order + 1)))

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> MultiPoly:
        """1-based access."""
        if i < 1:
            raise IndexError(i)
        return self.values[i - 1]

    def truncate(self, order: int) -> "BSequence":
        return BSequence(self.values[:order])

    def bindings(self) -> dict[str, MultiPoly]:
        return {f"b{i}": v for i, v in enumerate(self.values, 1)}


@dataclass(frozen=True)
class JSequence:
    """``J_1 .. J_N`` with ``J_1 = 0``."""

    values: tuple[MultiPoly, ...]

    def __post_init__(self):
        vals = tuple(_as_poly(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("empty J-sequence")
        if vals[0]:
            raise ValueError(f"J_1 must be 0, got {vals[0]}")

    @classmethod
    def symbolic(cls, order: int) -> "JSequence":
        return cls((MultiPoly.zero(),) + tuple(MultiPoly.J(i) for i in range(2, order + 1)))

    @classmethod
    def zeros(cls, order: int) -> "JSequence":
        return cls((MultiPoly.zero(),) * order)

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> MultiPoly:
        if i < 1:
            raise IndexError(i)
        return self.values[i - 1]

    def truncate(self, order: int) -> "JSequence":
        return JSequence(self.values[:order])

    def bindings(self) -> dict[str, MultiPoly]:
        return {f"J{i}": v for i, v in enumerate(self.values, 1) if i > 1}


class SymbolicL:
    """Backend keeping ``L`` as a symbol (values are :class:`LControlled`)."""

    zero = LControlled.zero()
    one = LControlled.one()

    def lift(self, poly: MultiPoly):
        return LControlled(LPoly.const(poly), reduce=False)

    def times_l(self, v):
        return v * LControlled.L()

    def over_l(self, v):
        return v.over_l()

    def s_factor(self, r: int, q: int):
        """(-1/(2(L-1)))^(r-q) / (r-q)! * (L-2q)!/(L-2r)!"""
        m = r - q
        c = Fraction((-1) ** m, 2 ** m * factorial(m))
        return LControlled(falling_factorial(r, q) * c, 0, m)

    def limit(self, v) -> MultiPoly:
        return limit_at_infinity(v)


class NumericL:
    """Backend with ``L`` fixed to a rational from the start (values are MultiPoly)."""

    zero = MultiPoly.zero()
    one = MultiPoly.one()

    def __init__(self, L):
        self.L = Fraction(L)
        if self.L in (0, 1):
            raise ValueError("L must avoid 0 and 1")

    def lift(self, poly):
        return poly

    def times_l(self, v):
        return v * self.L

    def over_l(self, v):
        return v * (1 / self.L)

    def s_factor(self, r, q):
        m = r - q
        c = Fraction((-1) ** m, 2 ** m * factorial(m)) / (self.L - 1) ** m
        return falling_factorial(r, q).eval(self.L) * c

    def limit(self, v):
        raise TypeError("no limit with a fixed L")


@dataclass
class KernelRecursion:
    """Incremental state for the r-induction; step r consumes steps < r.

    ``eb`` holds the coefficients of exp(L sum b_i (x/2d)^i) and ``ej``
    those of exp(L sum JL_i x^i), both extended one order per step.
    """

    backend: object = field(default_factory=SymbolicL)
    b: list = field(default_factory=lambda: [None])
    jl: list = field(default_factory=lambda: [None])
    ab: list = field(default_factory=lambda: [None])
    aj: list = field(default_factory=lambda: [None])
    eb: list = field(default_factory=list)
    ej: list = field(default_factory=list)

    def __post_init__(self):
        self.eb = [self.backend.one]
        self.ej = [self.backend.one]

    @property
    def done(self) -> int:
        return len(self.b) - 1

    def propose(self, b_r: MultiPoly):
        """Compute (JL_r, ab_r, eb_r) for the next r without committing."""
        be = self.backend
        r = self.done + 1
        ab_r = be.times_l(be.lift(b_r * (2 * D) ** (-r)))
        eb_r = exp_next(self.ab + [ab_r], self.eb, r, be.zero)
        eb = self.eb + [eb_r]
        s_r = be.zero
        for q in range(r + 1):
            if eb[q]:
                s_r = s_r + eb[q] * be.s_factor(r, q)
        ej_partial = exp_next(self.aj, self.ej, r, be.zero)
        jl_r = be.over_l(s_r - ej_partial)
        return jl_r, ab_r, eb_r, ej_partial

    def commit(self, b_r, proposal):
        jl_r, ab_r, eb_r, ej_partial = proposal
        aj_r = self.backend.times_l(jl_r)
        self.b.append(b_r)
        self.jl.append(jl_r)
        self.ab.append(ab_r)
        self.eb.append(eb_r)
        self.aj.append(aj_r)
        self.ej.append(ej_partial + aj_r)
        return jl_r

    def step(self, b_r: MultiPoly):
        return self.commit(b_r, self.propose(b_r))


def s_r(r: int, b: BSequence, backend=None):
    """``S_r`` for the given b-sequence (``r <= b.order``)."""
    if r > b.order or r < 0:
        raise ValueError(f"r={r} outside 0..{b.order}")
    be = backend or SymbolicL()
    eb = [be.one]
    ab = [None]
    for i in range(1, r + 1):
        ab.append(be.times_l(be.lift(b[i] * (2 * D) ** (-i))))
        eb.append(exp_next(ab, eb, i, be.zero))
    total = be.zero
    for q in range(r + 1):
        if eb[q]:
            total = total + eb[q] * be.s_factor(r, q)
    return total


def finite_l_kernels(b: BSequence, backend=None) -> list:
    """``[JL_1, ..., JL_N]`` with L symbolic (default) or fixed by the backend."""
    rec = KernelRecursion(backend or SymbolicL())
    for r in range(1, b.order + 1):
        rec.step(b[r])
    return rec.jl[1:]


def jbar_from_b(b: BSequence) -> JSequence:
    """The map f: b -> J."""
    rec = KernelRecursion(SymbolicL())
    out = []
    for r in range(1, b.order + 1):
        jl = rec.step(b[r])
        try:
            jbar = limit_at_infinity(jl)
        except Divergence as exc:
            raise Divergence(f"J_{r}: {exc}") from exc
        if r == 1 and jbar:
            raise ConsistencyError(f"J_1 came out as {jbar}, expected 0")
        out.append(jbar)
    return JSequence(tuple(out))


def b_from_jbar(j: JSequence) -> BSequence:
    """The map f^-1: J -> b, solving for each b_r in turn."""
    rec = KernelRecursion(SymbolicL())
    rec.step(D)
    out = [D]
    for r in range(2, j.order + 1):
        fresh = MultiPoly.b(r)
        jl_sym = rec.propose(fresh)[0]
        const, lin = _split_linear(jl_sym, f"b{r}", r)
        expected = (2 * D) ** (-r)
        if lin != expected:
            raise ConsistencyError(f"coefficient of b{r} in JL_{r} is {lin}, expected {expected}")
        try:
            base = limit_at_infinity(const)
        except Divergence as exc:
            raise Divergence(f"J_{r}: {exc}") from exc
        b_r = (j[r] - base) * (2 * D) ** r
        rec.step(b_r)
        out.append(b_r)
    return BSequence(tuple(out))


def _split_linear(v: LControlled, name: str, r: int):
    """Split ``v = const + lin * name``; ``lin`` must be L-free."""
    parts: dict[int, list] = {}
    for i, c in enumerate(v.num.coeffs):
        for e, sub in c.coefficients_in(name).items():
            parts.setdefault(e, [MultiPoly.zero()] * len(v.num.coeffs))[i] = sub
    if max(parts, default=0) > 1:
        raise ConsistencyError(f"JL_{r} is not linear in {name}")
    const = LControlled(LPoly(parts.get(0, [])), v.a_pow, v.b_pow)
    lin = LControlled(LPoly(parts.get(1, [])), v.a_pow, v.b_pow)
    if lin.num and (lin.num.degree > 0 or lin.a_pow or lin.b_pow):
        raise ConsistencyError(f"coefficient of {name} in JL_{r} depends on L")
    lin_poly = lin.num.leading() if lin.num else MultiPoly.zero()
    return const, lin_poly
