"""The twisted Borcherds product Psi_D over Q(sqrt(-D)) and its reduction at a prime above 2.

    Psi_D = prod_{m>=1} P_D(q^m)^{C(m mod 12; D m^2)},
    P_D(X) = prod_{b mod D} (1 - zeta^{-b} X)^{(-D/b)}.

Summing the twisted geometric series against the Gauss sum gives
log P_D(X) = sqrt(-D) sum_k (-D/k) X^k / k, so Psi_D is computed as the
exponential of an explicit series; oracle_PD expands P_D directly in the
cyclotomic field to cross-check that step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import is_squarefree, kronecker_symbol
from .maass import psi_exponents, sparse_components
from .partitions import ParityBitmap
from .qseries import (
    BitSeries,
    CycloElem,
    QuadElem,
    Series,
    gauss_sum_embed,
    ser_exp,
    ser_log,
    ser_mul,
)


class IntegralityError(ArithmeticError):
    pass


def kronecker(D: int, k: int) -> int:
    """(-D/k)."""
    return kronecker_symbol(-D, k)


def _check_D(D: int) -> None:
    if D <= 0 or D % 24 != 23 or not is_squarefree(D):
        raise ValueError(f"need square-free D = 23 mod 24, got {D}")


def _log_psi_rational(D: int, order: int, table) -> list[Fraction]:
    """y_n with log Psi_D = sqrt(-D) sum y_n q^n."""
    chi = [kronecker(D, k) for k in range(order)]
    y = [Fraction(0)] * order
    for m in range(1, order):
        n = D * m * m
        if not table.covers(m % 12, n):
            raise ValueError(f"component table does not cover C({m % 12}; {n})")
        c = table.coefficient(m % 12, n)
        if not c:
            continue
        for k in range(1, (order - 1) // m + 1):
            if chi[k]:
                y[m * k] += Fraction(c * chi[k], k)
    return y


def log_psi(D: int, order: int, table) -> Series:
    _check_D(D)
    return Series(QuadElem(0, y, D) for y in _log_psi_rational(D, order, table))


@dataclass(frozen=True)
class PsiExpansion:
    D: int
    order: int
    log_coeffs: Series
    coeffs: Series

    def conj(self) -> Series:
        return self.coeffs.map(lambda c: c.conj())

    def invariants(self) -> dict[str, bool]:
        one = Series.one(self.order, QuadElem(1, 0, self.D))
        return {
            "unit_constant": self.coeffs[0] == 1,
            "integral": all(c.is_integral() for c in self.coeffs),
            "conjugate_inverse": ser_mul(self.coeffs, self.conj()) == one,
        }

    def first_bad_coefficient(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if not c.is_integral():
                return n
        return None


def psi(D: int, order: int = 300, table=None, check: bool = True) -> PsiExpansion:
    """Exact q-expansion of Psi_D to the given order."""
    _check_D(D)
    if order < 1:
        raise ValueError("order must be >= 1")
    if table is None:
        table = sparse_components(psi_exponents(D, order))
    lp = log_psi(D, order, table)
    p = PsiExpansion(D, order, lp, ser_exp(lp))
    if check:
        assert_invariants(p)
    return p


def assert_invariants(p: PsiExpansion) -> None:
    inv = p.invariants()
    if not inv["integral"]:
        raise IntegralityError(f"D={p.D}: coefficient {p.first_bad_coefficient()} not in O_K")
    failed = [k for k, ok in inv.items() if not ok]
    if failed:
        raise ArithmeticError(f"D={p.D}: Psi_D invariants failed: {', '.join(failed)}")


def psi_mod2(p: PsiExpansion) -> BitSeries:
    return BitSeries.from_list([c.mod2() for c in p.coeffs])


def qdlog_psi_mod2(p: PsiExpansion) -> BitSeries:
    return psi_mod2(p).qdlog()


def _needed_index(D: int, m: int) -> int:
    return (D * m * m + 1) // 24


def lambert_rhs(D: int, order: int, bitmap: ParityBitmap) -> BitSeries:
    """sum_{(m,6)=1, m<order} [p((Dm^2+1)/24) mod 2] q^m/(1-q^m) over the binary field."""
    _check_D(D)
    top = _needed_index(D, max(order - 1, 1))
    if top >= bitmap.limit:
        raise ValueError(f"parity bitmap of size {bitmap.limit} does not reach p({top})")
    bits = 0
    for m in range(1, order):
        if m % 2 and m % 3 and bitmap[_needed_index(D, m)]:
            bits ^= _lambert_bits(m, order)
    return BitSeries(order, bits)


def _lambert_bits(m: int, order: int) -> int:
    out = 0
    for n in range(m, order, m):
        out |= 1 << n
    return out


def omega_series_mod2(order: int) -> BitSeries:
    """sum_{(m,6)=1} q^m/(1-q^m) over the binary field."""
    bits = 0
    for m in range(1, order):
        if m % 2 and m % 3:
            bits ^= _lambert_bits(m, order)
    return BitSeries(order, bits)


@dataclass(frozen=True)
class LambertComparison:
    D: int
    order: int
    lhs: BitSeries
    rhs: BitSeries
    mismatches: tuple[int, ...]

    @property
    def coprime_mismatches(self) -> tuple[int, ...]:
        return tuple(n for n in self.mismatches if n % self.D)

    @property
    def agrees_off_D(self) -> bool:
        return not self.coprime_mismatches


def compare_lambert(p: PsiExpansion, bitmap: ParityBitmap) -> LambertComparison:
    """Both sides of the mod-2 differential identity and every index where they differ."""
    lhs = qdlog_psi_mod2(p)
    rhs = lambert_rhs(p.D, p.order, bitmap)
    diff = (lhs + rhs).support()
    return LambertComparison(p.D, p.order, lhs, rhs, tuple(diff))


def nonsquare_linkage(p: PsiExpansion, bitmap: ParityBitmap) -> tuple[bool, bool]:
    """(d log of Psi_D mod 2 is nonzero, some Lambert bit at m prime to 6D is set)."""
    lhs = bool(qdlog_psi_mod2(p))
    rhs = lambert_rhs(p.D, p.order, bitmap)
    D = p.D
    witness = any(rhs[m] for m in range(1, p.order) if m % 2 and m % 3 and m % D)
    return lhs, witness


def oracle_PD(D: int, m: int, order: int) -> Series:
    """P_D(q^m) expanded directly in Q(zeta_D), truncated at q^order.

    Works in the group ring Z[zeta]/(zeta^D - 1) and reduces at the end.
    """
    if m < 1:
        raise ValueError("m must be positive")
    n = (order - 1) // m + 1  # number of X-coefficients needed
    # vec[i][j] = coefficient of zeta^j X^i
    vec = [[0] * D for _ in range(n)]
    vec[0][0] = 1
    for b in range(1, D):
        chi = kronecker(D, b)
        shift = (-b) % D
        if chi == 1:
            # multiply by (1 - zeta^{-b} X), top down
            for i in range(n - 1, 0, -1):
                prev = vec[i - 1]
                row = vec[i]
                for j in range(D):
                    row[(j + shift) % D] -= prev[j]
        elif chi == -1:
            # divide by (1 - zeta^{-b} X): row_i += zeta^{-b} row_{i-1}
            for i in range(1, n):
                prev = vec[i - 1]
                row = vec[i]
                for j in range(D):
                    row[(j + shift) % D] += prev[j]
    zero = CycloElem.from_group_ring(D, [0])
    out = [zero] * order
    for i in range(n):
        out[i * m] = CycloElem.from_group_ring(D, vec[i])
    return Series(out)


def oracle_log_psi(D: int, order: int, table) -> Series:
    """sum_m C(m mod 12; D m^2) log oracle_PD(D, m, order), in Q(zeta_D)."""
    zero = CycloElem.from_group_ring(D, [0])
    acc = [zero] * order
    for m in range(1, order):
        c = table.coefficient(m % 12, D * m * m)
        if not c:
            continue
        lg = ser_log(oracle_PD(D, m, order))
        for i in range(order):
            if lg[i]:
                acc[i] = acc[i] + lg[i] * c
    return Series(acc)


def embed_log_psi(D: int, order: int, table) -> Series:
    """log_psi with sqrt(-D) replaced by its Gauss-sum image in Q(zeta_D)."""
    G = gauss_sum_embed(D)
    return Series(G * y for y in _log_psi_rational(D, order, table))


def in_quadratic_subfield(x: CycloElem, D: int) -> bool:
    """Fixed by zeta -> zeta^g for a generator g of the squares mod D (D prime)."""
    g = next(a for a in range(2, D) if _generates_squares(a, D))
    return x.galois(g) == x


def _generates_squares(a: int, D: int) -> bool:
    if kronecker(D, a) != 1 or a % D == 0:
        return False
    target = (D - 1) // 2
    x, k = a % D, 1
    while x != 1:
        x = x * a % D
        k += 1
    return k == target
