"""Truncated formal power series over exact coefficient domains.

A :class:`Series` is an immutable tuple of coefficients ``c[0..N-1]`` standing
for ``sum c[n] q^n + O(q^N)``.  Coefficients may be ``int``, ``Fraction``,
:class:`QuadElem` or :class:`CycloElem`; anything supporting ``+ - *`` works
for the ring operations, and ``/ int`` is needed for ``exp``/``log``.

:class:`BitSeries` is the same object over the binary field, stored as the
bits of one Python integer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Sequence

from .arith import is_squarefree, kronecker_symbol

STRICT = True


class OrderMismatch(ValueError):
    pass


class NonUnitError(ValueError):
    pass


def _zero_like(c: Any) -> Any:
    return c - c


def _unit_inverse(c: Any) -> Any:
    if isinstance(c, int):
        if c in (1, -1):
            return c
        raise NonUnitError(f"constant term {c} is not a unit in Z")
    if not c:
        raise NonUnitError("constant term is zero")
    if c == 1:
        return c
    if hasattr(c, "inverse"):
        return c.inverse()
    return 1 / c


def _as_field(c: Any) -> Any:
    return Fraction(c) if isinstance(c, int) else c


class Series:
    """Truncated power series; ``order`` is the exclusive truncation bound."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any]):
        self.coeffs = tuple(coeffs)

    @classmethod
    def zeros(cls, order: int, zero: Any = 0) -> "Series":
        return cls([zero] * order)

    @classmethod
    def one(cls, order: int, one: Any = 1) -> "Series":
        zero = _zero_like(one)
        return cls([one] + [zero] * (order - 1))

    @classmethod
    def from_terms(cls, terms: dict[int, Any], order: int, zero: Any = 0) -> "Series":
        c = [zero] * order
        for n, v in terms.items():
            if 0 <= n < order:
                c[n] = c[n] + v
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order > 8 else ""
        return f"Series([{shown}{more}], order={self.order})"

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("truncate cannot extend precision")
        return Series(self.coeffs[:order])

    def map(self, fn: Callable[[Any], Any]) -> "Series":
        return Series(fn(c) for c in self.coeffs)

    def shift(self, k: int) -> "Series":
        """Multiply by q^k (k >= 0), keeping the order."""
        if k < 0:
            raise ValueError("negative shift")
        zero = _zero_like(self.coeffs[0])
        return Series(([zero] * k + list(self.coeffs))[: self.order])

    def _binary(self, other: "Series", strict: bool | None) -> int:
        if self.order == other.order:
            return self.order
        if STRICT if strict is None else strict:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, Series):
            n = self._binary(other, None)
            return Series(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))
        return Series((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return Series(-a for a in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Series):
            n = self._binary(other, None)
            return Series(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))
        return Series((self.coeffs[0] - other,) + self.coeffs[1:])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return ser_mul(self, other)
        return Series(a * other for a in self.coeffs)

    def __rmul__(self, other):
        return Series(other * a for a in self.coeffs)


def ser_mul(f: Series, g: Series, strict: bool | None = None) -> Series:
    """Cauchy product truncated to the common order."""
    n = f._binary(g, strict)
    gc = g.coeffs
    zero = _zero_like(f.coeffs[0] * gc[0]) if n else 0
    out = [zero] * n
    for i in range(n):
        a = f.coeffs[i]
        if not a:
            continue
        for j in range(n - i):
            b = gc[j]
            if b:
                out[i + j] = out[i + j] + a * b
    return Series(out)


def ser_inv(f: Series) -> Series:
    """Multiplicative inverse; the constant term must be a unit."""
    n = f.order
    inv0 = _unit_inverse(f.coeffs[0])
    support = [(k, c) for k, c in enumerate(f.coeffs) if k and c]
    zero = _zero_like(f.coeffs[0])
    g = [zero] * n
    if n:
        g[0] = inv0
    for m in range(1, n):
        acc = zero
        for k, c in support:
            if k > m:
                break
            b = g[m - k]
            if b:
                acc = acc + c * b
        if acc:
            g[m] = -(inv0 * acc)
    return Series(g)


def ser_div_binomial(f: Series, c: Any, k: int) -> Series:
    """f / (1 + c q^k), computed in linear time."""
    if k < 1:
        raise ValueError("k must be positive")
    out = list(f.coeffs)
    for n in range(k, len(out)):
        out[n] = out[n] - c * out[n - k]
    return Series(out)


def ser_mul_binomial(f: Series, c: Any, k: int) -> Series:
    """f * (1 + c q^k), computed in linear time."""
    if k < 1:
        raise ValueError("k must be positive")
    src = f.coeffs
    out = list(src)
    for n in range(k, len(out)):
        out[n] = out[n] + c * src[n - k]
    return Series(out)


def ser_exp(f: Series) -> Series:
    """exp(f) for f with zero constant term; needs division by integers."""
    n = f.order
    if n == 0:
        return f
    if f.coeffs[0]:
        raise ValueError("ser_exp needs a zero constant term")
    fc = [_as_field(c) for c in f.coeffs]
    zero = _zero_like(fc[0])
    weighted = [(k, k * fc[k]) for k in range(1, n) if fc[k]]
    g = [zero] * n
    g[0] = zero + 1
    for m in range(1, n):
        acc = zero
        for k, c in weighted:
            if k > m:
                break
            b = g[m - k]
            if b:
                acc = acc + c * b
        g[m] = acc / m
    return Series(g)


def ser_qdlog(f: Series) -> Series:
    """q f'/f.  Additive over products; the constant term must be a unit."""
    if isinstance(f, BitSeries):
        return f.qdlog()
    if f.order == 0:
        return f
    zero = _zero_like(f.coeffs[0])
    deriv = Series([zero] + [k * c for k, c in enumerate(f.coeffs) if k])
    return ser_mul(deriv, ser_inv(f))


def ser_log(f: Series) -> Series:
    """log(f) for f with constant term exactly 1."""
    if f.order == 0:
        return f
    if f.coeffs[0] != 1:
        raise ValueError("ser_log needs constant term 1")
    h = ser_qdlog(Series(_as_field(c) for c in f.coeffs))
    zero = _zero_like(h.coeffs[0])
    return Series([zero] + [h.coeffs[k] / k for k in range(1, f.order)])


def ser_substitute(f: Series, k: int, sign: int = 1, order: int | None = None) -> Series:
    """f(sign * q^k).

    The result has the same order as ``f`` unless ``order`` is given; a
    larger order is allowed because f_n lands at index n*k, so only
    ``ceil(order / k)`` input coefficients are consulted.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n_out = f.order if order is None else order
    if (n_out + k - 1) // k > f.order:
        raise ValueError("input series too short for the requested order")
    zero = _zero_like(f.coeffs[0])
    out = [zero] * n_out
    for n in range(0, (n_out + k - 1) // k):
        c = f.coeffs[n]
        out[n * k] = -c if (sign < 0 and n % 2) else c
    return Series(out)


def lambert_term(m: int, order: int) -> Series:
    """q^m / (1 - q^m) = sum_{j>=1} q^{mj}."""
    if m < 1:
        raise ValueError("lambert_term needs m >= 1")
    c = [0] * order
    for n in range(m, order, m):
        c[n] = 1
    return Series(c)


class QuadElem:
    """x + y*sqrt(-D) in Q(sqrt(-D)), with rational x, y."""

    __slots__ = ("x", "y", "D")

    def __init__(self, x, y=0, D: int = 0):
        self.x = Fraction(x)
        self.y = Fraction(y)
        self.D = D

    @classmethod
    def sqrt(cls, D: int) -> "QuadElem":
        return cls(0, 1, D)

    @classmethod
    def omega(cls, D: int) -> "QuadElem":
        return cls(Fraction(1, 2), Fraction(1, 2), D)

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.D != self.D and other.y and self.y:
                raise ValueError(f"mixing Q(sqrt(-{self.D})) and Q(sqrt(-{other.D}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(other, 0, self.D)
        return NotImplemented

    def _ctx(self, other: "QuadElem") -> int:
        return self.D or other.D

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x + o.x, self.y + o.y, self._ctx(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x - o.x, self.y - o.y, self._ctx(o))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.D)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.x * other, self.y * other, self.D)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        D = self._ctx(o)
        return QuadElem(self.x * o.x - D * self.y * o.y, self.x * o.y + self.y * o.x, D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.x * self.x + self.D * self.y * self.y

    def conj(self) -> "QuadElem":
        return QuadElem(self.x, -self.y, self.D)

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(-D))")
        return QuadElem(self.x / n, -self.y / n, self.D)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadElem(self.x / other, self.y / other, self.D)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadElem(other, 0, self.D) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadElem):
            return self.x == other.x and self.y == other.y and (
                self.D == other.D or not self.y or not self.D or not other.D
            )
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.D if self.y else 0))

    def __bool__(self) -> bool:
        return bool(self.x) or bool(self.y)

    def is_integral(self) -> bool:
        """Membership in Z[(1 + sqrt(-D))/2], valid for D = 3 mod 4."""
        two_y = 2 * self.y
        return two_y.denominator == 1 and (self.x - self.y).denominator == 1

    def mod2(self) -> int:
        """Residue at the prime (2, w), w = (1 + sqrt(-D))/2 sent to 0."""
        if not self.is_integral():
            raise ValueError(f"{self} is not in O_K")
        return int(self.x - self.y) % 2

    def __repr__(self) -> str:
        return f"QuadElem({self.x}, {self.y}, D={self.D})"

    def __str__(self) -> str:
        if not self.y:
            return str(self.x)
        root = f"sqrt(-{self.D})"
        y = "" if self.y == 1 else "-" if self.y == -1 else f"{self.y}*"
        if not self.x:
            return f"{y}{root}"
        sep = " + " if self.y > 0 else " - "
        yabs = "" if abs(self.y) == 1 else f"{abs(self.y)}*"
        return f"{self.x}{sep}{yabs}{root}"


def quad_arith(a: QuadElem, b: QuadElem, op: str) -> QuadElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def quad_conj(a: QuadElem) -> QuadElem:
    return a.conj()


def quad_is_integral(a: QuadElem) -> bool:
    return a.is_integral()


def quad_mod2(a: QuadElem) -> int:
    return a.mod2()


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] // den[-1]
        q[i - dn] = c
        if c:
            for t in range(dn + 1):
                num[i - dn + t] -= c * den[t]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return q


class CycloElem:
    """Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1)."""

    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Sequence):
        self.n = n
        self.coords = tuple(Fraction(c) for c in coords)

    @classmethod
    def from_group_ring(cls, n: int, vec: Sequence) -> "CycloElem":
        """Reduce sum vec[j] zeta^j (any length) modulo Phi_n."""
        phi = cyclotomic_poly(n)
        deg = len(phi) - 1
        v = [Fraction(c) for c in vec] + [Fraction(0)] * max(0, deg - len(vec))
        for i in range(len(v) - 1, deg - 1, -1):
            c = v[i]
            if c:
                for t in range(deg):
                    if phi[t]:
                        v[i - deg + t] -= c * phi[t]
                v[i] = Fraction(0)
        return cls(n, v[:deg])

    @classmethod
    def zeta_power(cls, n: int, j: int) -> "CycloElem":
        vec = [0] * n
        vec[j % n] = 1
        return cls.from_group_ring(n, vec)

    @classmethod
    def scalar(cls, n: int, c) -> "CycloElem":
        deg = len(cyclotomic_poly(n)) - 1
        return cls(n, [c] + [0] * (deg - 1))

    def _coerce(self, other) -> "CycloElem":
        if isinstance(other, CycloElem):
            if other.n != self.n:
                raise ValueError("mixing different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem.scalar(self.n, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloElem(self.n, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.n, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloElem(self.n, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.n, [a * other for a in self.coords])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = [Fraction(0)] * (2 * len(self.coords))
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        return CycloElem.from_group_ring(self.n, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.n, [a / other for a in self.coords])
        return NotImplemented

    def galois(self, a: int) -> "CycloElem":
        """Image under zeta -> zeta^a, gcd(a, n) = 1."""
        vec = [Fraction(0)] * self.n
        for j, c in enumerate(self.coords):
            vec[(a * j) % self.n] += c
        return CycloElem.from_group_ring(self.n, vec)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloElem.scalar(self.n, other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.n == other.n and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.n, self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __repr__(self) -> str:
        return f"CycloElem({self.n}, {[str(c) for c in self.coords]})"


def gauss_sum_embed(D: int) -> CycloElem:
    """sum_{b mod D} (-D/b) zeta_D^b, an element whose square is -D."""
    if D <= 0 or not is_squarefree(D) or D % 24 != 23:
        raise ValueError(f"gauss_sum_embed needs square-free D = 23 mod 24, got {D}")
    vec = [kronecker_symbol(-D, b) for b in range(D)]
    return CycloElem.from_group_ring(D, vec)


class BitSeries:
    """Truncated power series over the binary field; bit n is the q^n coefficient."""

    __slots__ = ("order", "bits")

    def __init__(self, order: int, bits: int = 0):
        self.order = order
        self.bits = bits & ((1 << order) - 1)

    @classmethod
    def from_series(cls, f: Series) -> "BitSeries":
        bits = 0
        for n, c in enumerate(f.coeffs):
            if c % 2:
                bits |= 1 << n
        return cls(f.order, bits)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "BitSeries":
        bits = 0
        for n, c in enumerate(values):
            if c % 2:
                bits |= 1 << n
        return cls(len(values), bits)

    @classmethod
    def one(cls, order: int) -> "BitSeries":
        return cls(order, 1)

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.order:
            raise IndexError(n)
        return (self.bits >> n) & 1

    def to_list(self) -> list[int]:
        return [(self.bits >> n) & 1 for n in range(self.order)]

    def support(self) -> list[int]:
        out, b, n = [], self.bits, 0
        while b:
            if b & 1:
                out.append(n)
            b >>= 1
            n += 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitSeries):
            return NotImplemented
        return self.order == other.order and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.order, self.bits))

    def __bool__(self) -> bool:
        return bool(self.bits)

    def __repr__(self) -> str:
        shown = "".join(str(b) for b in self.to_list()[:32])
        return f"BitSeries({shown}{'...' if self.order > 32 else ''}, order={self.order})"

    def _check(self, other: "BitSeries") -> int:
        if self.order != other.order:
            if STRICT:
                raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
            return min(self.order, other.order)
        return self.order

    def __add__(self, other: "BitSeries") -> "BitSeries":
        n = self._check(other)
        return BitSeries(n, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "BitSeries") -> "BitSeries":
        n = self._check(other)
        return BitSeries(n, _clmul(self.bits, other.bits, n))

    def square(self) -> "BitSeries":
        out = 0
        for k in self.support():
            if 2 * k >= self.order:
                break
            out |= 1 << (2 * k)
        return BitSeries(self.order, out)

    def inverse(self) -> "BitSeries":
        if not self.bits & 1:
            raise NonUnitError("constant term is 0 mod 2")
        g, prec = 1, 1
        while prec < self.order:
            prec = min(2 * prec, self.order)
            mask = (1 << prec) - 1
            g = _clmul(self.bits & mask, _clmul(g, g, prec), prec)
        return BitSeries(self.order, g)

    def qdlog(self) -> "BitSeries":
        odd = _odd_mask(self.order)
        return BitSeries(self.order, self.bits & odd) * self.inverse()

    def is_square(self) -> bool:
        return not self.bits & _odd_mask(self.order)

    def sqrt(self) -> "BitSeries":
        """Square root at half precision; raises unless the series is a square."""
        if not self.is_square():
            raise ValueError("series is not a square")
        half = (self.order + 1) // 2
        out = 0
        for k in self.support():
            out |= 1 << (k // 2)
        return BitSeries(half, out)


@lru_cache(maxsize=64)
def _odd_mask(order: int) -> int:
    return int("10" * ((order + 1) // 2), 2) & ((1 << order) - 1)


def _clmul(a: int, b: int, order: int) -> int:
    """Carry-less product truncated to ``order`` bits."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    mask = (1 << order) - 1
    b &= mask
    out = 0
    n = 0
    while a and n < order:
        if a & 1:
            out ^= b << n
        a >>= 1
        n += 1
    return out & mask
