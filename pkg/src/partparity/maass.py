"""Holomorphic parts H_j^+ of the weight 1/2 vector-valued form and the Borcherds exponents.

Component j (mod 12) is

    0                               j = 0, 3, 6, 9
    q^-1 f(q^24)                    j = 1, 7
   -q^-1 f(q^24)                    j = 5, 11
    2 q^8 (-omega(q^12) + omega(-q^12))   j = 2
   -2 q^8 ( omega(q^12) + omega(-q^12))   j = 4
    2 q^8 ( omega(q^12) + omega(-q^12))   j = 8
    2 q^8 ( omega(q^12) - omega(-q^12))   j = 10
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .partitions import mock_f, mock_omega, mock_values
from .qseries import Series, ser_substitute

ZERO_COMPONENTS = (0, 3, 6, 9)
F_COMPONENTS = (1, 5, 7, 11)
OMEGA_COMPONENTS = (2, 4, 8, 10)


def _f_sign(j: int) -> int:
    return 1 if j in (1, 7) else -1


def _omega_weight(j: int, k: int) -> int:
    """Multiplier of omega_k in C(j; 8 + 12k)."""
    even = k % 2 == 0
    if j == 2:
        return 0 if even else -4
    if j == 4:
        return -4 if even else 0
    if j == 8:
        return 4 if even else 0
    if j == 10:
        return 0 if even else 4
    raise ValueError(j)


def _check_residue(j: int) -> int:
    if not 0 <= j < 12:
        raise ValueError(f"component index must be a residue mod 12, got {j}")
    return j


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class ComponentTable:
    """Dense table: comps[j] = (shift, series), coefficient of q^n at index n - shift.

    Exponents -1 <= n < order are covered.
    """

    order: int
    comps: tuple[tuple[int, Series], ...]

    def coefficient(self, j: int, n: int) -> int:
        j = _check_residue(j)
        if n >= self.order:
            raise OutOfRange(f"exponent {n} beyond table order {self.order}")
        shift, s = self.comps[j]
        i = n - shift
        if i < 0:
            return 0
        return s[i]

    def covers(self, j: int, n: int) -> bool:
        return n < self.order


@dataclass(frozen=True)
class SparseComponentTable:
    """Coefficients C(j; n) at a prescribed set of exponents, for n far beyond dense reach."""

    exponents: frozenset[int]
    af: Mapping[int, int] = field(repr=False)
    omega: Mapping[int, int] = field(repr=False)

    @property
    def order(self) -> int:
        return max(self.exponents, default=-1) + 1

    def covers(self, j: int, n: int) -> bool:
        return n in self.exponents

    def coefficient(self, j: int, n: int) -> int:
        j = _check_residue(j)
        if n not in self.exponents:
            raise OutOfRange(f"exponent {n} not in sparse table")
        return _formula_coefficient(j, n, self.af.__getitem__, self.omega.__getitem__)


def _formula_coefficient(j: int, n: int, af, omega) -> int:
    if j in ZERO_COMPONENTS:
        return 0
    if j in F_COMPONENTS:
        if (n + 1) % 24:
            return 0
        return _f_sign(j) * af((n + 1) // 24)
    if n < 8 or (n - 8) % 12:
        return 0
    k = (n - 8) // 12
    wt = _omega_weight(j, k)
    return wt * omega(k) if wt else 0


def build_components(order: int) -> ComponentTable:
    """All twelve holomorphic parts for exponents -1 <= n < order."""
    if order < 24:
        raise ValueError("order must be >= 24")
    f = mock_f(order // 24 + 1)
    w = mock_omega(order // 12 + 1)
    zero = Series([0] * order)

    # q^-1 f(q^24): index i holds exponent i - 1
    fq = ser_substitute(f, 24, 1, order=order + 1)
    w_plus = ser_substitute(w, 12, 1, order=order)
    w_minus = ser_substitute(w, 12, -1, order=order)

    def q8(s: Series) -> Series:
        return (s * 2).shift(8)

    comps: list[tuple[int, Series]] = [(0, zero)] * 12
    comps[1] = comps[7] = (-1, fq)
    comps[5] = comps[11] = (-1, -fq)
    comps[2] = (0, q8(w_minus - w_plus))
    comps[4] = (0, q8(-(w_plus + w_minus)))
    comps[8] = (0, q8(w_plus + w_minus))
    comps[10] = (0, q8(w_plus - w_minus))
    return ComponentTable(order, tuple(comps))


def sparse_components(exponents: Iterable[int]) -> SparseComponentTable:
    """Table holding C(j; n) for every j at each requested exponent n."""
    ex = frozenset(int(n) for n in exponents)
    f_idx = {(n + 1) // 24 for n in ex if n >= -1 and (n + 1) % 24 == 0}
    w_idx = {(n - 8) // 12 for n in ex if n >= 8 and (n - 8) % 12 == 0}
    af, om = mock_values(f_idx, w_idx)
    return SparseComponentTable(ex, af, om)


def psi_exponents(D: int, order: int) -> set[int]:
    """Exponents D m^2 (1 <= m < order) needed by the Borcherds product."""
    return {D * m * m for m in range(1, order)}


def coefficient(table, j: int, n: int) -> int:
    return table.coefficient(j, n)


def borcherds_exponent(table, D: int, m: int) -> int:
    """C(m mod 12; D m^2)."""
    if m < 1:
        raise ValueError("m must be positive")
    n = D * m * m
    if not table.covers(m % 12, n):
        raise OutOfRange(f"C({m % 12}; {n}) not covered by the table")
    return table.coefficient(m % 12, n)


def packet_functional(table, n: int) -> int:
    """C(1;n) - C(5;n) + C(7;n) - C(11;n)."""
    c = table.coefficient
    return c(1, n) - c(5, n) + c(7, n) - c(11, n)
