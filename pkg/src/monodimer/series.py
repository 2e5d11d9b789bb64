"""
Truncated formal power series in one variable over a pluggable ring.

A :class:`Series` of order ``N`` stores ``c_0 .. c_N`` and every operation
discards powers above ``N``. Mixing orders or variables raises
:class:`SeriesError`; use :meth:`Series.truncate` to line them up.

Coefficient rings need ``+``, ``-``, ``*`` (with each other and with
``Fraction``) plus a :class:`Ring` descriptor giving ``zero``/``one``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .algebra import MultiPoly

VARIABLES = ("x", "z", "p")


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    name: str
    zero: Any
    one: Any
    invert: Callable[[Any], Any] | None = None


def _invert_fraction(c):
    if not c:
        raise SeriesError("constant term is not a unit")
    return 1 / Fraction(c)


def _invert_poly(c: MultiPoly):
    try:
        return c.unit_inverse()
    except ArithmeticError as exc:
        raise SeriesError(f"constant term {c} is not a unit") from exc


RATIONALS = Ring("Q", Fraction(0), Fraction(1), _invert_fraction)
POLYS = Ring("Q[d,1/d,b,J]", MultiPoly.zero(), MultiPoly.one(), _invert_poly)


def exp_next(a: Sequence, e: Sequence, n: int, zero):
    """Coefficient ``n`` of ``exp(A)`` from ``a[1..n]`` and ``e[0..n-1]``.

    Uses ``n e_n = sum_{k=1}^{n} k a_k e_{n-k}``; entries of ``a`` that are
    ``None`` count as zero.
    """
    acc = zero
    for k in range(1, n + 1):
        if k < len(a) and a[k] is not None and e[n - k] is not None:
            acc = acc + a[k] * e[n - k] * k
    return acc * Fraction(1, n)


class Series:
    __slots__ = ("var", "order", "coeffs", "ring")

    def __init__(self, coeffs: Sequence, order: int, ring: Ring = RATIONALS, var: str = "p"):
        if var not in VARIABLES:
            raise SeriesError(f"unknown formal variable {var!r}")
        if order < 0:
            raise SeriesError("negative truncation order")
        cs = list(coeffs[: order + 1])
        cs.extend([ring.zero] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order
        self.ring = ring
        self.var = var

    @classmethod
    def zero(cls, order, ring=RATIONALS, var="p"):
        return cls([], order, ring, var)

    @classmethod
    def one(cls, order, ring=RATIONALS, var="p"):
        return cls([ring.one], order, ring, var)

    @classmethod
    def monomial(cls, c, power, order, ring=RATIONALS, var="p"):
        return cls([ring.zero] * power + [c], order, ring, var)

    def _like(self, coeffs, order=None):
        return Series(coeffs, self.order if order is None else order, self.ring, self.var)

    def _check(self, other: "Series"):
        if other.var != self.var or other.order != self.order:
            raise SeriesError(
                f"incompatible series: {self.var}^{self.order} vs {other.var}^{other.order}")

    def __getitem__(self, j):
        return self.coeffs[j]

    def coeff(self, j: int):
        if not 0 <= j <= self.order:
            raise SeriesError(f"coefficient {j} outside 0..{self.order}")
        return self.coeffs[j]

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.var, self.order, self.coeffs) == (other.var, other.order, other.coeffs)

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"Series({self.var}, order={self.order}, [{body}])"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    # arithmetic

    def __add__(self, other):
        if isinstance(other, Series):
            self._check(other)
            return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)])
        return self._like([self.coeffs[0] + other] + list(self.coeffs[1:]))

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self._like([c * other for c in self.coeffs])
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = self.ring.zero
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return self._like(out)

    def __rmul__(self, other):
        return self._like([other * c for c in self.coeffs])

    def __pow__(self, k: int):
        return series_pow(self, k)

    # order management

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return self._like(self.coeffs[: order + 1], order)

    def shift_up(self, m: int) -> "Series":
        """Multiply by ``var^m``; the order grows by ``m``."""
        return self._like([self.ring.zero] * m + list(self.coeffs), self.order + m)

    def shift_div(self, m: int) -> "Series":
        return series_shift_div(self, m)


def series_mul(s: Series, t: Series) -> Series:
    if not isinstance(t, Series):
        raise SeriesError("series_mul needs two series")
    return s * t


def series_exp(s: Series) -> Series:
    if s.coeffs[0]:
        raise SeriesError("exp needs a zero constant term")
    e = [s.ring.one]
    for n in range(1, s.order + 1):
        e.append(exp_next(s.coeffs, e, n, s.ring.zero))
    return s._like(e)


def series_log1p(s: Series) -> Series:
    """``log(1 + s)`` via ``n l_n = n s_n - sum_{k<n} k l_k s_{n-k}``."""
    if s.coeffs[0]:
        raise SeriesError("log1p needs a zero constant term")
    c = s.coeffs
    log = [s.ring.zero]
    for n in range(1, s.order + 1):
        acc = c[n] * n
        for k in range(1, n):
            if log[k] and c[n - k]:
                acc = acc - log[k] * c[n - k] * k
        log.append(acc * Fraction(1, n))
    return s._like(log)


def series_inverse(s: Series) -> Series:
    if s.ring.invert is None:
        raise SeriesError(f"ring {s.ring.name} has no unit inverse")
    inv0 = s.ring.invert(s.coeffs[0])
    c = s.coeffs
    out = [inv0]
    for n in range(1, s.order + 1):
        acc = s.ring.zero
        for k in range(1, n + 1):
            if c[k] and out[n - k]:
                acc = acc + c[k] * out[n - k]
        out.append(-(acc * inv0))
    return s._like(out)


def series_pow(s: Series, k: int) -> Series:
    if k < 0:
        return series_pow(series_inverse(s), -k)
    result = Series.one(s.order, s.ring, s.var)
    base = s
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def series_shift_div(s: Series, m: int) -> Series:
    """Divide by ``var^m``. The result has order ``N - m``: the top ``m``
    coefficients of the quotient are not determined by ``s``."""
    if m < 0 or m > s.order:
        raise SeriesError(f"cannot divide order-{s.order} series by {s.var}^{m}")
    for i in range(m):
        if s.coeffs[i]:
            raise SeriesError(f"coefficient of {s.var}^{i} is nonzero; not divisible by {s.var}^{m}")
    return s._like(s.coeffs[m:], s.order - m)


def coeff_extract(s: Series, j: int):
    return s.coeff(j)
