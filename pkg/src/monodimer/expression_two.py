"""
Series coefficients a'_k from the Mayer coefficients b (the map h).

With beta = 1, the activity z(p) reverts p = 2 sum n b_n z^n by iterating

    z <- p/(2 b_1) - sum_{n>=2} (n b_n / b_1) z^n

from z = 0. Then P(p) = sum b_n z^n, 1 + F = 2 b_1 z / p and

    Q_2 = (1/2)(2(1-p) log(1-p) + p) + P(p) - (p/2) log(1 + F).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import MultiPoly
from .series import POLYS, Series, series_log1p
from .transforms import BSequence, ConsistencyError


@dataclass(frozen=True)
class MayerInversion:
    order: int
    z_of_p: Series
    pressure: Series
    f_factor: Series      # order N - 1: z/p loses the top coefficient


@dataclass(frozen=True)
class APrimeSequence:
    order: int
    values: tuple[MultiPoly, ...]   # a'_1 .. a'_N

    def __getitem__(self, k: int) -> MultiPoly:
        return self.values[k - 1]


def _powers(z: Series, n: int) -> list[Series]:
    out = [Series.one(z.order, POLYS), z]
    while len(out) <= n:
        out.append(out[-1] * z)
    return out


def mayer_sum(b: BSequence, z: Series, weight=lambda n: 1) -> Series:
    """sum_{n=1}^{N} weight(n) b_n z^n (terms beyond N vanish since z = O(p))."""
    N = z.order
    zs = _powers(z, min(N, b.order))
    total = Series.zero(N, POLYS)
    for n in range(1, min(N, b.order) + 1):
        if b[n]:
            total = total + zs[n] * (b[n] * weight(n))
    return total


def invert_mayer(b: BSequence, N: int) -> MayerInversion:
    if N < 1:
        raise ValueError("order must be at least 1")
    if b.order < N:
        raise ValueError(f"b-sequence has order {b.order} < {N}")
    inv_b1 = b[1].unit_inverse()
    lead = Series.monomial(inv_b1 * Fraction(1, 2), 1, N, POLYS)
    z = Series.zero(N, POLYS)
    for _ in range(N):
        zs = _powers(z, N)
        nxt = lead
        for n in range(2, N + 1):
            if b[n]:
                nxt = nxt - zs[n] * (b[n] * inv_b1 * n)
        z = nxt
    check = mayer_sum(b, z, weight=lambda n: 2 * n)
    if check != Series.monomial(MultiPoly.one(), 1, N, POLYS):
        raise ConsistencyError("reversion identity 2 sum n b_n z^n = p failed")
    pressure = mayer_sum(b, z)
    f_factor = z.shift_div(1) * (2 * b[1]) - 1
    return MayerInversion(N, z, pressure, f_factor)


def pressure_series(b: BSequence, inv: MayerInversion) -> Series:
    return mayer_sum(b, inv.z_of_p)


def _one_minus_p_log(N: int) -> Series:
    """(1/2)(2(1-p) log(1-p) + p), rational coefficients lifted to polynomials."""
    minus_p = Series.monomial(MultiPoly.const(-1), 1, N, POLYS)
    log = series_log1p(minus_p)
    one_minus_p = Series([MultiPoly.one(), MultiPoly.const(-1)], N, POLYS)
    return one_minus_p * log + Series.monomial(MultiPoly.const(Fraction(1, 2)), 1, N, POLYS)


def q2_second(b: BSequence, N: int) -> Series:
    inv = invert_mayer(b, N)
    log_f = series_log1p(inv.f_factor)
    return _one_minus_p_log(N) + inv.pressure - (log_f * Fraction(1, 2)).shift_up(1)


def a_prime_coeffs(b: BSequence, N: int) -> APrimeSequence:
    q2 = q2_second(b, N)
    if q2.coeff(0):
        raise ConsistencyError(f"Q_2 from expression two has constant term {q2.coeff(0)}")
    if q2.coeff(1):
        raise ConsistencyError(f"a'_1 came out as {q2.coeff(1)}, expected 0")
    values = [MultiPoly.zero()] + [q2.coeff(k) for k in range(2, N + 1)]
    return APrimeSequence(N, tuple(values))
