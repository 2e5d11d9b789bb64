"""
Series coefficients a_k from the cluster kernels J (the map g).

The alphas solve, by plain iteration from zero,

    alpha_k = J_k p^k (1 - u)^(-2k) (1 - u/p)^k,     u = 2 sum_i i alpha_i

and then

    Q_2 = sum alpha_i - sum_{k>=2} u^k / k + (p/2) sum_{k>=2} (u/p)^k / k.

Both k-sums are ``-log(1 - w) - w`` for ``w = u`` and ``w = u/p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import MultiPoly
from .series import POLYS, Series, series_inverse, series_log1p
from .transforms import ConsistencyError, JSequence


@dataclass(frozen=True)
class AlphaSystem:
    order: int
    alphas: dict[int, Series]   # k -> alpha_k, k = 2..order

    def u(self) -> Series:
        """2 sum_i i alpha_i."""
        total = Series.zero(self.order, POLYS)
        for i, a in self.alphas.items():
            total = total + a * (2 * i)
        return total


@dataclass(frozen=True)
class ASequence:
    order: int
    values: tuple[MultiPoly, ...]   # a_1 .. a_N

    def __getitem__(self, k: int) -> MultiPoly:
        return self.values[k - 1]


def _sweep(j: JSequence, alphas: dict[int, Series], N: int) -> dict[int, Series]:
    u = Series.zero(N, POLYS)
    for i, a in alphas.items():
        u = u + a * (2 * i)
    new = {}
    for k in range(2, N + 1):
        if not j[k]:
            new[k] = Series.zero(N, POLYS)
            continue
        # J_k p^k kills everything above order N - k in the other factors
        m = N - k
        inv = series_inverse(1 - u.truncate(m))
        w = (1 - u.shift_div(1)).truncate(m)
        factor = inv ** (2 * k) * w ** k
        new[k] = (factor * j[k]).shift_up(k)
    return new


def alpha_fixed_point(j: JSequence, N: int) -> AlphaSystem:
    if j.order < N:
        raise ValueError(f"J-sequence has order {j.order} < {N}")
    if j[1]:
        raise ValueError("J_1 must vanish")
    alphas = {k: Series.zero(N, POLYS) for k in range(2, N + 1)}
    for _ in range(N):
        alphas = _sweep(j, alphas, N)
    again = _sweep(j, alphas, N)
    if again != alphas:
        bad = [k for k in alphas if again[k] != alphas[k]]
        raise ConsistencyError(f"alpha iteration did not stabilise (alpha_{bad[0]})")
    return AlphaSystem(N, alphas)


def _log_tail(w: Series) -> Series:
    """sum_{k>=2} w^k / k = -log1p(-w) - w."""
    return -series_log1p(-w) - w


def q2_first(system: AlphaSystem) -> Series:
    N = system.order
    total = Series.zero(N, POLYS)
    for a in system.alphas.values():
        total = total + a
    u = system.u()
    total = total - _log_tail(u)
    w = u.shift_div(1)
    return total + (_log_tail(w) * Fraction(1, 2)).shift_up(1)


def a_coeffs(j: JSequence, N: int) -> ASequence:
    q2 = q2_first(alpha_fixed_point(j, N))
    values = [MultiPoly.zero()] + [q2.coeff(k) for k in range(2, N + 1)]
    if q2.coeff(0) or q2.coeff(1):
        raise ConsistencyError("Q_2 from expression one has terms below p^2")
    return ASequence(N, tuple(values))
