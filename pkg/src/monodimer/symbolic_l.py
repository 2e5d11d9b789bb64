"""
Rational functions of the auxiliary size ``L`` with denominators restricted
to ``L^a (L-1)^b``.

Every denominator that shows up while building the finite-``L`` kernels has
that shape, so no polynomial gcd is ever needed. Values are kept lightly
reduced (common factors of ``L`` and ``L-1`` are cancelled) to stop the
numerators from growing, but equality never relies on reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra import MultiPoly, _is_scalar
from .series import Ring

_ZERO = MultiPoly.zero()
_ONE = MultiPoly.one()


class Divergence(ArithmeticError):
    """The L -> infinity limit does not exist (numerator degree too high)."""


class LPoly:
    """Dense polynomial in ``L``; ``coeffs[i]`` multiplies ``L^i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [MultiPoly.lift(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs):
        p = cls.__new__(cls)
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def const(cls, c) -> "LPoly":
        return cls([c])

    @classmethod
    def L(cls) -> "LPoly":
        return cls([_ZERO, _ONE])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> MultiPoly:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, LPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "LPoly") -> "LPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return LPoly._raw(out)

    def __neg__(self):
        return LPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "LPoly":
        if isinstance(other, LPoly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return LPoly._raw(())
            out = [_ZERO] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
            return LPoly._raw(out)
        if isinstance(other, MultiPoly) or _is_scalar(other):
            return LPoly._raw([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, m: int) -> "LPoly":
        """Multiply by ``L^m``."""
        if not self.coeffs:
            return self
        return LPoly._raw([_ZERO] * m + list(self.coeffs))

    def times_l_minus_1_pow(self, m: int) -> "LPoly":
        if m == 0 or not self.coeffs:
            return self
        binom = LPoly._raw([Fraction((-1) ** (m - i) * comb(m, i)) * _ONE for i in range(m + 1)])
        return self * binom

    def value_at_one(self) -> MultiPoly:
        total = _ZERO
        for c in self.coeffs:
            total = total + c
        return total

    def divide_l_minus_1(self) -> "LPoly":
        """Exact synthetic division by ``L - 1``; caller checks ``value_at_one() == 0``."""
        n = len(self.coeffs) - 1
        q = [_ZERO] * n
        carry = _ZERO
        for i in range(n, 0, -1):
            carry = carry + self.coeffs[i]
            q[i - 1] = carry
        return LPoly._raw(q)

    def eval(self, L) -> MultiPoly:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * L + c
        return acc

    def map(self, fn) -> "LPoly":
        return LPoly._raw([fn(c) for c in self.coeffs])

    def __repr__(self):
        return "LPoly([" + ", ".join(str(c) for c in self.coeffs) + "])"


def falling_factorial(r: int, p: int) -> LPoly:
    """``(L-2p)! / (L-2r)!`` as the monic product ``prod_{j<2(r-p)} (L - 2r + 1 + j)``."""
    if not 0 <= p <= r:
        raise ValueError(f"need 0 <= p <= r, got r={r}, p={p}")
    out = LPoly.const(1)
    for j in range(2 * (r - p)):
        out = out * LPoly([-2 * r + 1 + j, 1])
    return out


class LControlled:
    """``num(L) / (L^a_pow * (L-1)^b_pow)`` with ``MultiPoly`` coefficients."""

    __slots__ = ("num", "a_pow", "b_pow")

    def __init__(self, num: LPoly | MultiPoly | int | Fraction, a_pow: int = 0, b_pow: int = 0,
                 reduce: bool = True):
        if not isinstance(num, LPoly):
            num = LPoly.const(num)
        if a_pow < 0 or b_pow < 0:
            raise ValueError("denominator powers must be non-negative")
        if reduce:
            num, a_pow, b_pow = _reduce(num, a_pow, b_pow)
        self.num = num
        self.a_pow = a_pow
        self.b_pow = b_pow

    @classmethod
    def zero(cls):
        return cls(LPoly(), 0, 0, reduce=False)

    @classmethod
    def one(cls):
        return cls(LPoly.const(1), 0, 0, reduce=False)

    @classmethod
    def L(cls):
        return cls(LPoly.L(), 0, 0, reduce=False)

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"LControlled({self.num!r}, a={self.a_pow}, b={self.b_pow})"

    @staticmethod
    def _lift(x) -> "LControlled":
        if isinstance(x, LControlled):
            return x
        if isinstance(x, LPoly):
            return LControlled(x, reduce=False)
        if isinstance(x, MultiPoly) or _is_scalar(x):
            return LControlled(LPoly.const(x), reduce=False)
        return NotImplemented

    def _over(self, a_pow: int, b_pow: int) -> LPoly:
        """Numerator rewritten over the larger denominator ``L^a_pow (L-1)^b_pow``."""
        return self.num.shift(a_pow - self.a_pow).times_l_minus_1_pow(b_pow - self.b_pow)

    def __add__(self, other):
        other = LControlled._lift(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        a = max(self.a_pow, other.a_pow)
        b = max(self.b_pow, other.b_pow)
        return LControlled(self._over(a, b) + other._over(a, b), a, b)

    __radd__ = __add__

    def __neg__(self):
        return LControlled(-self.num, self.a_pow, self.b_pow, reduce=False)

    def __sub__(self, other):
        other = LControlled._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LControlled):
            return LControlled(self.num * other.num, self.a_pow + other.a_pow,
                               self.b_pow + other.b_pow)
        if isinstance(other, LPoly):
            return LControlled(self.num * other, self.a_pow, self.b_pow)
        if isinstance(other, MultiPoly) or _is_scalar(other):
            return LControlled(self.num * other, self.a_pow, self.b_pow, reduce=False)
        return NotImplemented

    __rmul__ = __mul__

    def over_l(self, times: int = 1) -> "LControlled":
        """Divide by ``L^times`` by bumping the denominator power."""
        return LControlled(self.num, self.a_pow + times, self.b_pow)

    def over_l_minus_1(self, times: int = 1) -> "LControlled":
        return LControlled(self.num, self.a_pow, self.b_pow + times)

    def __eq__(self, other):
        other = LControlled._lift(other)
        if other is NotImplemented:
            return other
        a = max(self.a_pow, other.a_pow)
        b = max(self.b_pow, other.b_pow)
        return self._over(a, b) == other._over(a, b)

    __hash__ = None

    def map_coeffs(self, fn) -> "LControlled":
        return LControlled(self.num.map(fn), self.a_pow, self.b_pow)

    def substitute(self, bindings) -> "LControlled":
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def eval(self, L) -> MultiPoly:
        """Value at a numeric ``L`` (not 0 or 1)."""
        L = Fraction(L)
        if L in (0, 1):
            raise ZeroDivisionError("L must avoid 0 and 1")
        return self.num.eval(L) * (1 / (L ** self.a_pow * (L - 1) ** self.b_pow))

    def excess_degree(self) -> int:
        return self.num.degree - (self.a_pow + self.b_pow)


def limit_at_infinity(u: LControlled) -> MultiPoly:
    if not u.num:
        return MultiPoly.zero()
    excess = u.excess_degree()
    if excess > 0:
        raise Divergence(f"numerator degree exceeds denominator degree by {excess}")
    if excess < 0:
        return MultiPoly.zero()
    return u.num.leading()


def _reduce(num: LPoly, a_pow: int, b_pow: int):
    if not num:
        return num, 0, 0
    if a_pow:
        low = 0
        while low < a_pow and not num.coeffs[low]:
            low += 1
        if low:
            num = LPoly._raw(num.coeffs[low:])
            a_pow -= low
    while b_pow and num.degree > 0 and not num.value_at_one():
        num = num.divide_l_minus_1()
        b_pow -= 1
    return num, a_pow, b_pow


def lc_add(u: LControlled, v: LControlled) -> LControlled:
    return u + v


def lc_mul(u: LControlled, v: LControlled) -> LControlled:
    return u * v


def _invert_lc(c: LControlled) -> LControlled:
    if c.num.degree != 0:
        raise ArithmeticError("only L-free units are invertible")
    inv = c.num.coeffs[0].unit_inverse()
    return LControlled(LPoly([_ZERO] * c.a_pow + [inv]).times_l_minus_1_pow(c.b_pow))


LRING = Ring("LControlled", LControlled.zero(), LControlled.one(), _invert_lc)
