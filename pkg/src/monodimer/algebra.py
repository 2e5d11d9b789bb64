"""
Exact multivariate Laurent polynomials over the rationals.

The symbols are ``d`` (any integer exponent), ``b1, b2, ...`` and
``J1, J2, ...`` (non-negative exponents). Coefficients are
:class:`fractions.Fraction`.

Internally a monomial is packed into one Python integer (a Kronecker
substitution with balanced digits), so multiplying monomials is integer
addition and hashing is cheap. :class:`Monomial` is the readable view.

Canonical text form
-------------------
::

    poly   := "0" | ["-"] term (sep term)*
    sep    := " + " | " - "
    term   := coeff | [coeff "*"] factor ("*" factor)*
    coeff  := n | n "/" m          (absolute value, m > 1, gcd(n, m) = 1)
    factor := "d" ["^" int] | "b" i ["^" e] | "J" i ["^" e]

Terms appear in canonical order: ascending by ``(dExp, bExps, jExps)``
where ``bExps``/``jExps`` are the dense exponent tuples indexed from 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

Rational = Fraction

_BITS = 20
_BASE = 1 << _BITS
_HALF = _BASE >> 1
_MASK = _BASE - 1

_SYMBOL_RE = re.compile(r"^(d|b|J)(\d*)$")


class AlgebraError(ArithmeticError):
    pass


def _field(kind: str, index: int = 0) -> int:
    if kind == "d":
        return 0
    if index < 1:
        raise ValueError(f"symbol index must be positive, got {kind}{index}")
    return 2 * index - 1 if kind == "b" else 2 * index


def _parse_symbol(name: str) -> tuple[str, int]:
    m = _SYMBOL_RE.match(name)
    if not m or (m.group(1) != "d" and not m.group(2)) or (m.group(1) == "d" and m.group(2)):
        raise ValueError(f"unknown symbol {name!r}")
    kind = m.group(1)
    return kind, int(m.group(2)) if m.group(2) else 0


def _unpack(key: int) -> dict[int, int]:
    out = {}
    pos = 0
    while key:
        digit = key & _MASK
        if digit >= _HALF:
            digit -= _BASE
        key = (key - digit) >> _BITS
        if digit:
            out[pos] = digit
        pos += 1
    return out


def _pack(fields: Mapping[int, int]) -> int:
    key = 0
    for pos, exp in fields.items():
        if not -_HALF < exp < _HALF:
            raise OverflowError(f"exponent {exp} out of range")
        key += exp << (_BITS * pos)
    return key


@dataclass(frozen=True)
class Monomial:
    """Readable form of a packed monomial. Zero exponents are never stored."""

    d_exp: int = 0
    b_exps: tuple[tuple[int, int], ...] = ()
    j_exps: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_key(cls, key: int) -> "Monomial":
        fields = _unpack(key)
        b, j = [], []
        d_exp = fields.pop(0, 0)
        for pos in sorted(fields):
            idx = (pos + 1) // 2
            (b if pos % 2 else j).append((idx, fields[pos]))
        return cls(d_exp, tuple(b), tuple(j))

    def key(self) -> int:
        fields = {0: self.d_exp}
        for i, e in self.b_exps:
            fields[_field("b", i)] = e
        for i, e in self.j_exps:
            fields[_field("J", i)] = e
        return _pack(fields)

    def sort_key(self, width: int) -> tuple:
        b = dict(self.b_exps)
        j = dict(self.j_exps)
        return (
            self.d_exp,
            tuple(b.get(i, 0) for i in range(1, width + 1)),
            tuple(j.get(i, 0) for i in range(1, width + 1)),
        )

    def factors(self) -> list[tuple[str, int]]:
        out = []
        if self.d_exp:
            out.append(("d", self.d_exp))
        out.extend((f"b{i}", e) for i, e in self.b_exps)
        out.extend((f"J{i}", e) for i, e in self.j_exps)
        return out


Scalar = Union[int, Fraction]


def _is_scalar(x) -> bool:
    return isinstance(x, (int, _RationalABC)) and not isinstance(x, bool)


class MultiPoly:
    """Immutable polynomial: ``terms`` maps packed monomial -> nonzero Fraction."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = c if type(c) is Fraction else Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls._raw({0: Fraction(1)})

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        return cls({0: c})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "MultiPoly":
        kind, idx = _parse_symbol(name)
        if power < 0 and kind != "d":
            raise AlgebraError(f"negative exponent for {name}")
        return cls._raw({_pack({_field(kind, idx): power}): Fraction(1)})

    @classmethod
    def d(cls, power: int = 1) -> "MultiPoly":
        return cls._raw({_pack({0: power}): Fraction(1)})

    @classmethod
    def b(cls, i: int) -> "MultiPoly":
        return cls.symbol(f"b{i}")

    @classmethod
    def J(cls, i: int) -> "MultiPoly":
        return cls.symbol(f"J{i}")

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Monomial, Scalar]]) -> "MultiPoly":
        out: dict[int, Fraction] = {}
        for mono, c in pairs:
            k = mono.key()
            out[k] = out.get(k, 0) + Fraction(c)
        return cls(out)

    @staticmethod
    def lift(x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if _is_scalar(x):
            return MultiPoly.const(x)
        return NotImplemented

    # ring operations

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if not _is_scalar(other):
                return NotImplemented
            other = MultiPoly.const(other)
        if len(self.terms) < len(other.terms):
            small, out = self.terms, dict(other.terms)
        else:
            small, out = other.terms, dict(self.terms)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            if not _is_scalar(other):
                return NotImplemented
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not _is_scalar(other):
                return NotImplemented
            if not other:
                return MultiPoly._raw({})
            other = Fraction(other)
            return MultiPoly._raw({k: c * other for k, c in self.terms.items()})
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (k2, c2), = b.items()
            return MultiPoly._raw({k + k2: c * c2 for k, c in a.items()})
        out: dict[int, Fraction] = {}
        get = out.get
        for k2, c2 in b.items():
            for k1, c1 in a.items():
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        return MultiPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, MultiPoly):
            return self * other.unit_inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = MultiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def unit_inverse(self) -> "MultiPoly":
        """Inverse of ``c * d^k``; the only units of this ring."""
        if len(self.terms) != 1:
            raise AlgebraError(f"not invertible: {self}")
        (k, c), = self.terms.items()
        fields = _unpack(k)
        if set(fields) - {0}:
            raise AlgebraError(f"not invertible: {self}")
        return MultiPoly._raw({-k: 1 / c})

    # comparisons

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if _is_scalar(other):
            if not other:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # inspection

    def monomials(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order."""
        items = [(Monomial.from_key(k), c) for k, c in self.terms.items()]
        width = max((i for m, _ in items for i, _ in m.b_exps + m.j_exps), default=0)
        items.sort(key=lambda mc: mc[0].sort_key(width))
        return items

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def constant(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def symbols(self) -> set[str]:
        names = set()
        for k in self.terms:
            for pos in _unpack(k):
                names.add(_name_of_field(pos))
        return names

    def max_index(self, kind: str) -> int:
        """Largest i with ``{kind}i`` present (0 if none)."""
        best = 0
        parity = 1 if kind == "b" else 0
        for k in self.terms:
            for pos in _unpack(k):
                if pos and pos % 2 == parity:
                    best = max(best, (pos + 1) // 2)
        return best

    def d_exponents(self) -> set[int]:
        return {_unpack(k).get(0, 0) for k in self.terms}

    def coefficients_in(self, name: str) -> dict[int, "MultiPoly"]:
        """Split by powers of one symbol: ``{power: coefficient}``."""
        kind, idx = _parse_symbol(name)
        pos = _field(kind, idx)
        shift = _BITS * pos
        out: dict[int, dict[int, Fraction]] = {}
        for k, c in self.terms.items():
            e = _unpack(k).get(pos, 0)
            out.setdefault(e, {})[k - (e << shift)] = c
        return {e: MultiPoly._raw(t) for e, t in out.items()}

    def degree_in(self, name: str) -> int:
        return max(self.coefficients_in(name), default=0)

    # substitution / evaluation

    def substitute(self, bindings: Mapping[str, "MultiPoly | Scalar"]) -> "MultiPoly":
        """Replace symbols by polynomials (``d`` only by a unit, since it has
        negative exponents). Unbound symbols are left alone."""
        if not bindings or not self.terms:
            return self
        bound = {}
        for name, value in bindings.items():
            kind, idx = _parse_symbol(name)
            bound[_field(kind, idx)] = MultiPoly.lift(value)
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(pos, e):
            key = (pos, e)
            if key not in powers:
                powers[key] = bound[pos] ** e
            return powers[key]

        acc: dict[int, Fraction] = {}
        for k, c in self.terms.items():
            rest = {}
            factor = None
            for pos, e in _unpack(k).items():
                if pos in bound:
                    p = power(pos, e)
                    factor = p if factor is None else factor * p
                else:
                    rest[pos] = e
            base = _pack(rest)
            if factor is None:
                acc[base] = acc.get(base, 0) + c
                continue
            for k2, c2 in factor.terms.items():
                acc[base + k2] = acc.get(base + k2, 0) + c * c2
        return MultiPoly(acc)

    def eval(self, d: Scalar, b: Mapping[int, Scalar] | None = None,
             j: Mapping[int, Scalar] | None = None) -> Fraction:
        """Exact value with every symbol bound. ``b[1]`` defaults to ``d``."""
        d = Fraction(d)
        b = dict(b or {})
        j = dict(j or {})
        b.setdefault(1, d)
        total = Fraction(0)
        for k, c in self.terms.items():
            value = c
            for pos, e in _unpack(k).items():
                if pos == 0:
                    if d == 0 and e < 0:
                        raise ZeroDivisionError("d = 0 with a negative power of d")
                    value *= d ** e
                    continue
                idx = (pos + 1) // 2
                table, kind = (b, "b") if pos % 2 else (j, "J")
                if idx not in table:
                    raise KeyError(f"unbound symbol {kind}{idx}")
                value *= Fraction(table[idx]) ** e
            total += value
        return total

    # rendering

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"MultiPoly({to_text(self)!r})"


def _name_of_field(pos: int) -> str:
    if pos == 0:
        return "d"
    return f"b{(pos + 1) // 2}" if pos % 2 else f"J{pos // 2}"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(p: MultiPoly) -> str:
    """Canonical rendering; see the module docstring for the grammar."""
    if not p.terms:
        return "0"
    parts = []
    for mono, c in p.monomials():
        factors = []
        for name, e in mono.factors():
            factors.append(name if e == 1 else f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _fmt_coeff(mag) + "*" + "*".join(factors)
        parts.append((c < 0, body))
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


_TERM_RE = re.compile(r"^(?:(\d+)(?:/(\d+))?)?\*?(.*)$")


def from_text(text: str) -> MultiPoly:
    """Parse the canonical text form produced by :func:`to_text`."""
    text = text.strip()
    if text == "0":
        return MultiPoly.zero()
    tokens = re.split(r" ([+-]) ", text)
    signs = ["+"] + tokens[1::2]
    bodies = tokens[0::2]
    out = MultiPoly.zero()
    for sign, body in zip(signs, bodies):
        if body.startswith("-"):
            sign = "-" if sign == "+" else "+"
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m:
            raise ValueError(f"bad term {body!r}")
        num, den, rest = m.groups()
        c = Fraction(int(num), int(den or 1)) if num else Fraction(1)
        term = MultiPoly.const(c)
        if rest:
            for factor in rest.split("*"):
                name, _, e = factor.partition("^")
                term = term * MultiPoly.symbol(name, int(e) if e else 1)
        out = out + (term if sign == "+" else -term)
    return out
