"""
Numeric evaluation of lambda_d(p) = Q_1 + Q_2 by both routes.

Q_2 is summed exactly in rationals; only Q_1 (which has logarithms) and the
final rendering go through :mod:`decimal`.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .expression_one import a_coeffs
from .expression_two import a_prime_coeffs
from .transforms import BSequence, jbar_from_b

DEFAULT_PRECISION = 50


def _dec(x: Fraction) -> Decimal:
    return Decimal(x.numerator) / Decimal(x.denominator)


def q1_eval(d, p, precision: int = DEFAULT_PRECISION) -> Decimal:
    """(1/2)(p ln(2d) - p ln p - 2(1-p) ln(1-p) - p), with p ln p -> 0 at p = 0."""
    d, p = Fraction(d), Fraction(p)
    if not 0 <= p < 1:
        raise ValueError(f"p must satisfy 0 <= p < 1, got {p}")
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    with decimal.localcontext() as ctx:
        ctx.prec = precision + 20
        if p == 0:
            return +Decimal(0)
        P = _dec(p)
        total = P * _dec(2 * d).ln() - P * P.ln() - 2 * (1 - P) * (1 - P).ln() - P
        return +(total / 2)


def series_value(coeffs, d, p) -> Fraction:
    """sum_k a_k(d) p^k for polynomials a_k in d only."""
    d, p = Fraction(d), Fraction(p)
    total = Fraction(0)
    for k, a in enumerate(coeffs, 1):
        if a:
            total += a.eval(d) * p ** k
    return total


@dataclass(frozen=True)
class LambdaEstimate:
    order: int
    q1: Decimal
    q2_first: Fraction
    q2_second: Fraction
    precision: int = DEFAULT_PRECISION

    def _decimal(self, x: Fraction) -> Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = self.precision + 20
            return _dec(x)

    def _round(self, x: Decimal) -> Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = self.precision
            return +x

    @property
    def lambda_first(self) -> Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = self.precision + 20
            return self.q1 + self._decimal(self.q2_first)

    @property
    def lambda_second(self) -> Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = self.precision + 20
            return self.q1 + self._decimal(self.q2_second)

    def as_dict(self) -> dict:
        r = self._round
        return {
            "order": self.order,
            "q1": str(r(self.q1)),
            "q2First": str(r(self._decimal(self.q2_first))),
            "q2Second": str(r(self._decimal(self.q2_second))),
            "q2FirstExact": str(self.q2_first),
            "q2SecondExact": str(self.q2_second),
            "lambdaFirst": str(r(self.lambda_first)),
            "lambdaSecond": str(r(self.lambda_second)),
        }


def lambda_eval(b: BSequence, d, p, order: int, precision: int = DEFAULT_PRECISION) -> LambdaEstimate:
    """Both truncated expressions at numeric (d, p). ``b`` may involve the
    symbol d only; it is grounded at ``d`` after the maps are applied."""
    if order < 2:
        raise ValueError("order must be at least 2")
    if b.order < order:
        raise ValueError(f"b-sequence has order {b.order} < {order}")
    b = b.truncate(order)
    q1 = q1_eval(d, p, precision)
    first = a_coeffs(jbar_from_b(b), order).values
    second = a_prime_coeffs(b, order).values
    return LambdaEstimate(order, q1, series_value(first, d, p), series_value(second, d, p),
                          precision)
