"""Partition numbers, their parity, and the third-order mock theta series f and omega."""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import gmpy2
import numpy as np

from .arith import pentagonal_numbers
from .qseries import Series, ser_div_binomial

BITMAP_MAGIC = b"PPAR1"


@dataclass(frozen=True)
class PartitionTable:
    limit: int
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.limit:
            raise IndexError(f"p({n}) outside table of size {self.limit}")
        return self.values[n]

    def series(self, order: int | None = None) -> Series:
        order = self.limit if order is None else order
        if order > self.limit:
            raise ValueError("table shorter than requested order")
        return Series(self.values[:order])


def partition_table(limit: int) -> PartitionTable:
    """p(0..limit-1) by Euler's pentagonal recurrence."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    pent = pentagonal_numbers(limit)[1:]
    p = [0] * limit
    p[0] = 1
    for n in range(1, limit):
        acc = 0
        for g, s in pent:
            if g > n:
                break
            # p(n) = -sum_{g>0} s_g p(n-g)
            acc -= s * p[n - g]
        p[n] = acc
    return PartitionTable(limit, tuple(p))


class ParityBitmap:
    """Packed bits of p(n) mod 2, least-significant bit first within each byte."""

    __slots__ = ("limit", "_bits")

    def __init__(self, limit: int, bits: int):
        self.limit = limit
        self._bits = bits & ((1 << limit) - 1)

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.limit:
            raise IndexError(f"parity of p({n}) outside bitmap of size {self.limit}")
        return (self._bits >> n) & 1

    def __len__(self) -> int:
        return self.limit

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParityBitmap):
            return NotImplemented
        return self.limit == other.limit and self._bits == other._bits

    def __repr__(self) -> str:
        return f"ParityBitmap(limit={self.limit}, odd={self._bits.bit_count()})"

    @property
    def as_int(self) -> int:
        return self._bits

    def to_bytes(self) -> bytes:
        return self._bits.to_bytes((self.limit + 7) // 8, "little")

    def count_odd(self) -> int:
        return self._bits.bit_count()

    def save(self, path: str | Path) -> None:
        data = BITMAP_MAGIC + struct.pack("<Q", self.limit) + self.to_bytes()
        Path(path).write_bytes(data)

    @classmethod
    def load(cls, path: str | Path) -> "ParityBitmap":
        raw = Path(path).read_bytes()
        if raw[:5] != BITMAP_MAGIC:
            raise ValueError(f"{path}: not a parity bitmap (bad magic)")
        (limit,) = struct.unpack("<Q", raw[5:13])
        body = raw[13:]
        if len(body) != (limit + 7) // 8:
            raise ValueError(f"{path}: expected {(limit + 7) // 8} payload bytes, found {len(body)}")
        return cls(limit, int.from_bytes(body, "little"))


def _spread_bits(bits: int, n: int) -> int:
    """Move bit k to bit 2k for k < n."""
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    unpacked = np.unpackbits(raw, bitorder="little")[:n]
    out = np.zeros(2 * n, dtype=np.uint8)
    out[::2] = unpacked
    return int.from_bytes(np.packbits(out, bitorder="little").tobytes(), "little")


def parity_bitmap(limit: int) -> ParityBitmap:
    """p(n) mod 2 for n < limit.

    Uses P(q) = E(q) P(q)^2 = E(q) P(q^2) over the binary field, E the Euler
    product, which doubles the known range at each step.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    bits, n = 1, 1
    while n < limit:
        m = min(2 * n, limit)
        spread = _spread_bits(bits, n)
        acc = 0
        for g, _ in pentagonal_numbers(m):
            acc ^= spread << g
        bits = acc & ((1 << m) - 1)
        n = m
    return ParityBitmap(limit, bits)


def durfee_series(order: int) -> Series:
    """1 + sum_{m>=1} q^{m^2} / ((1-q)(1-q^2)...(1-q^m))^2."""
    if order < 1:
        raise ValueError("order must be >= 1")
    out = [0] * order
    out[0] = 1
    # tail = 1/prod_{j<=m}(1-q^j)^2, kept at order - m^2
    tail = Series([1] + [0] * (order - 1))
    m = 1
    while m * m < order:
        span = order - m * m
        tail = Series(tail.coeffs[:span])
        tail = ser_div_binomial(ser_div_binomial(tail, -1, m), -1, m) if m < span else tail
        for i, c in enumerate(tail.coeffs):
            out[m * m + i] += c
        m += 1
    return Series(out)


def mock_f(order: int) -> Series:
    """f(q) = 1 + sum_{n>=1} q^{n^2} / ((1+q)(1+q^2)...(1+q^n))^2."""
    if order < 1:
        raise ValueError("order must be >= 1")
    out = [0] * order
    out[0] = 1
    tail = Series([1] + [0] * (order - 1))
    n = 1
    while n * n < order:
        span = order - n * n
        tail = Series(tail.coeffs[:span])
        if n < span:
            tail = ser_div_binomial(ser_div_binomial(tail, 1, n), 1, n)
        for i, c in enumerate(tail.coeffs):
            out[n * n + i] += c
        n += 1
    return Series(out)


def mock_omega(order: int) -> Series:
    """omega(q) = sum_{n>=0} q^{2n^2+2n} / ((1-q)(1-q^3)...(1-q^{2n+1}))^2."""
    if order < 1:
        raise ValueError("order must be >= 1")
    out = [0] * order
    tail = Series([1] + [0] * (order - 1))
    n = 0
    while 2 * n * n + 2 * n < order:
        e = 2 * n * n + 2 * n
        span = order - e
        tail = Series(tail.coeffs[:span])
        d = 2 * n + 1
        if d < span:
            tail = ser_div_binomial(ser_div_binomial(tail, -1, d), -1, d)
        for i, c in enumerate(tail.coeffs):
            out[e + i] += c
        n += 1
    return Series(out)


# Sparse high-index coefficients of f and omega.
#
# Dense expansion of the defining sums is quadratic in the index and hopeless
# near 10^6.  Two classical identities make both functions quotients by an
# Euler product with sparse, small numerators:
#
#   f(q) (q;q)_inf       = 1 + 4 sum_{n>=1} (-1)^n q^{n(3n+1)/2} / (1 + q^n)
#   omega(q) (q^2;q^2)_inf = sum_{n>=0} (-1)^n q^{3n(n+1)} (1 + q^{2n+1}) / (1 - q^{2n+1})
#
# The division and products run on GMP integers with one coefficient per
# fixed-width slot (Kronecker substitution).  Series are packed in reverse so
# that an exact big-integer reciprocal of the Euler product yields p(n) in
# slot L-1-n.

_GUARD = 4


def _slot_width(length: int, l1_bits: int) -> int:
    # log2 p(n) ~ pi sqrt(2n/3) / ln 2 overestimates
    bits = math.pi * math.sqrt(2 * length / 3) / math.log(2) + l1_bits + 16
    return int(math.ceil(bits / 64) * 64)


def _pack_reversed(vals: np.ndarray, length: int, w: int) -> gmpy2.mpz:
    """sum vals[i] X^(length-1-i), X = 2^w, for int64 vals."""
    words = w // 64
    rev = np.zeros(length, dtype=np.int64)
    k = min(len(vals), length)
    rev[length - k:] = vals[:k][::-1]
    pos = np.zeros(length * words, dtype=np.uint64)
    neg = np.zeros(length * words, dtype=np.uint64)
    pos[::words] = np.where(rev > 0, rev, 0).astype(np.uint64)
    neg[::words] = np.where(rev < 0, -rev, 0).astype(np.uint64)
    out = gmpy2.mpz.from_bytes(pos.tobytes(), "little")
    if neg.any():
        out -= gmpy2.mpz.from_bytes(neg.tobytes(), "little")
    return out


def _euler_coeffs(length: int) -> np.ndarray:
    e = np.zeros(length, dtype=np.int64)
    for g, s in pentagonal_numbers(length):
        e[g] = s
    return e


class _SlotReader:
    def __init__(self, value: gmpy2.mpz, w: int, top: int):
        self.w = w
        self.nb = w // 8
        size = (top + 2) * self.nb
        self.raw = value.to_bytes(size, "little", signed=True)

    def slot(self, s: int) -> int:
        nb = self.nb
        v = int.from_bytes(self.raw[s * nb:(s + 1) * nb], "little")
        if s > 0 and self.raw[s * nb - 1] & 0x80:
            v += 1
        if v >> (self.w - 1):
            v -= 1 << self.w
        if abs(v).bit_length() > self.w - 8:
            raise ArithmeticError("slot overflow in packed series product")
        return v


def _f_numerator(length: int) -> np.ndarray:
    r = np.zeros(length, dtype=np.int64)
    r[0] = 1
    n = 1
    while n * (3 * n + 1) // 2 < length:
        e = n * (3 * n + 1) // 2
        s = 4 if n % 2 == 0 else -4
        r[e::2 * n] += s
        r[e + n::2 * n] -= s
        n += 1
    return r


def _omega_numerator(length: int) -> np.ndarray:
    s = np.zeros(length, dtype=np.int64)
    n = 0
    while 3 * n * (n + 1) < length:
        e = 3 * n * (n + 1)
        sign = 1 if n % 2 == 0 else -1
        d = 2 * n + 1
        s[e] += sign
        s[e + d::d] += 2 * sign
        n += 1
    return s


def mock_values(f_indices: Iterable[int] = (), omega_indices: Iterable[int] = ()) -> tuple[dict[int, int], dict[int, int]]:
    """Exact coefficients a_f(n) and omega_k at arbitrary sparse indices."""
    f_idx = sorted(set(int(n) for n in f_indices))
    w_idx = sorted(set(int(n) for n in omega_indices))
    if (f_idx and f_idx[0] < 0) or (w_idx and w_idx[0] < 0):
        raise ValueError("indices must be non-negative")
    f_len = f_idx[-1] + 1 if f_idx else 0
    w_len = w_idx[-1] // 2 + 1 if w_idx else 0
    length = max(f_len, w_len, 1) + _GUARD

    numerators = []
    if f_idx:
        numerators.append(("f", _f_numerator(length)))
    if w_idx:
        s = _omega_numerator(2 * length)
        numerators.append(("even", s[0::2][:length]))
        numerators.append(("odd", s[1::2][:length]))
    l1 = max(int(np.abs(a).sum()) for _, a in numerators) if numerators else 1
    w = _slot_width(length, l1.bit_length())

    euler = _pack_reversed(_euler_coeffs(length), length, w)
    recip = (gmpy2.mpz(1) << (w * (2 * length - 2))) // euler
    del euler

    f_out: dict[int, int] = {}
    w_out: dict[int, int] = {}
    top = 2 * length - 1
    for name, arr in numerators:
        prod = _pack_reversed(arr, length, w) * recip
        reader = _SlotReader(prod, w, top)
        del prod
        if name == "f":
            for n in f_idx:
                f_out[n] = reader.slot(2 * length - 2 - n)
        else:
            parity = 0 if name == "even" else 1
            for k in w_idx:
                if k % 2 == parity:
                    w_out[k] = reader.slot(2 * length - 2 - k // 2)
        del reader
    return f_out, w_out
