"""Binary quadratic forms of discriminant -D, the class group, the restricted Heegner set,
genus characters and the orbit structure under the class of a prime above 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .arith import is_squarefree, legendre, prime_factors


class Form(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def inverse(self) -> "Form":
        return Form(self.a, -self.b, self.c)

    def is_reduced(self) -> bool:
        a, b, c = self
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


class FormError(ValueError):
    pass


def _check_fundamental(D: int) -> None:
    if D <= 0:
        raise FormError(f"D must be positive, got {D}")
    if D % 4 == 3 and is_squarefree(D):
        return
    if D % 4 == 0 and is_squarefree(D // 4) and (D // 4) % 4 in (1, 2):
        return
    raise FormError(f"-{D} is not a negative fundamental discriminant")


def _check_heegner_disc(D: int) -> None:
    if D <= 0 or D % 24 != 23 or not is_squarefree(D):
        raise FormError(f"need square-free D = 23 mod 24, got {D}")


def reduce_form(f: Form) -> Form:
    """Gauss reduction of a positive definite form."""
    a, b, c = f
    if a <= 0 or f.disc >= 0:
        raise FormError(f"{f} is not positive definite")
    D = -f.disc
    while True:
        # bring b into (-a, a]
        k = (a - b) // (2 * a)
        if k:
            b += 2 * a * k
            c = (b * b + D) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        if (a == c or b == a) and b < 0:
            b = -b
        if b == -a:
            b = a
        return Form(a, b, c)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(u, v, d) with u*a + v*b = d = gcd(a, b) >= 0."""
    u0, u1, v0, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -u0, -v0, -a
    return u0, v0, a


def compose(f: Form, g: Form) -> Form:
    """Reduced representative of the product class (Dirichlet composition)."""
    if f.disc != g.disc:
        raise FormError(f"discriminants differ: {f.disc} vs {g.disc}")
    D = -f.disc
    (a1, b1, c1), (a2, b2, c2) = f, g
    if a1 > a2:
        (a1, b1, c1), (a2, b2, c2) = (a2, b2, c2), (a1, b1, c1)
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        y1, _, d = _xgcd(a2, a1)
    if s % d == 0:
        x2, y2, d1 = 0, -1, d
    else:
        x2, y2, d1 = _xgcd(s, d)
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    num = b3 * b3 + D
    if num % (4 * a3):
        raise ArithmeticError(f"composition of {f} and {g} left the discriminant")
    return reduce_form(Form(a3, b3, num // (4 * a3)))


def principal_form(D: int) -> Form:
    if D % 4 == 3:
        return Form(1, 1, (D + 1) // 4)
    return Form(1, 0, D // 4)


@dataclass(frozen=True)
class ClassGroup:
    D: int
    classes: tuple[Form, ...]

    @property
    def h(self) -> int:
        return len(self.classes)

    @property
    def identity(self) -> Form:
        return principal_form(self.D)

    def mul(self, f: Form, g: Form) -> Form:
        return compose(f, g)

    def inverse(self, f: Form) -> Form:
        return reduce_form(f.inverse())

    def power(self, f: Form, k: int) -> Form:
        if k < 0:
            f, k = self.inverse(f), -k
        result, base = self.identity, reduce_form(f)
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def order_of(self, f: Form) -> int:
        return class_order(self, f)

    def squares(self) -> frozenset[Form]:
        return frozenset(compose(x, x) for x in self.classes)

    def is_square(self, f: Form) -> bool:
        return reduce_form(f) in self.squares()

    def two_rank(self) -> int:
        """Rank of the 2-torsion, equal to (number of primes dividing D) - 1."""
        n2 = sum(1 for x in self.classes if compose(x, x) == self.identity)
        return n2.bit_length() - 1

    def is_cyclic(self) -> bool:
        return any(self.order_of(x) == self.h for x in self.classes)


def class_group(D: int) -> ClassGroup:
    """Reduced forms of discriminant -D, by exhaustive search over |b| <= a <= sqrt(D/3)."""
    _check_fundamental(D)
    out = []
    amax = math.isqrt(D // 3) + 1
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b + D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = Form(a, b, c)
            if f.is_reduced() and math.gcd(math.gcd(a, b), c) == 1:
                out.append(f)
    out.sort(key=lambda f: (f.a, abs(f.b), -f.b))
    return ClassGroup(D, tuple(out))


def class_number_analytic(D: int) -> int:
    """h(-D) = -(1/D) sum_{b<D} b (-D/b) for odd square-free D > 3, D = 3 mod 4."""
    from .arith import kronecker_symbol

    if D <= 3 or D % 4 != 3 or not is_squarefree(D):
        raise ValueError("formula implemented for square-free D = 3 mod 4, D > 3")
    s = sum(b * kronecker_symbol(-D, b) for b in range(1, D))
    if s % D:
        raise ArithmeticError("class number sum not divisible by D")
    return -s // D


@dataclass(frozen=True)
class HeegnerSet:
    D: int
    reps: tuple[Form, ...]
    class_of: dict = field(hash=False, compare=True)

    def rep_of(self, cls: Form) -> Form:
        for r, c in self.class_of.items():
            if c == cls:
                return r
        raise KeyError(cls)


class WindowExhausted(RuntimeError):
    pass


def heegner_set(D: int, window: int | None = None, ceiling: int | None = None) -> HeegnerSet:
    """One form [a,b,c] with 6 | a and b = 1 mod 12 in each class of discriminant -D."""
    _check_heegner_disc(D)
    G = class_group(D)
    h = G.h
    window = 6 * D if window is None else window
    ceiling = 600 * D if ceiling is None else ceiling
    found: dict[Form, Form] = {}
    a = 6
    while True:
        while a <= window:
            four_a = 4 * a
            for b in range(1, 2 * a, 12):
                num = b * b + D
                if num % four_a:
                    continue
                q = Form(a, b, num // four_a)
                cls = reduce_form(q)
                if cls not in found:
                    found[cls] = q
            if len(found) == h:
                reps = tuple(sorted(found.values()))
                return HeegnerSet(D, reps, {q: c for c, q in found.items()})
            a += 6
        if window >= ceiling:
            raise WindowExhausted(f"D={D}: found {len(found)} of {h} classes with a <= {window}")
        window = min(2 * window, ceiling)


def frobenius_form(D: int) -> Form:
    """[2, 1, (D+1)/8], representing a prime ideal above 2."""
    if D <= 0 or D % 8 != 7:
        raise FormError(f"2 does not split for D={D}; need D = 7 mod 8")
    return Form(2, 1, (D + 1) // 8)


def class_order(G: ClassGroup, f: Form) -> int:
    e = G.identity
    x = reduce_form(f)
    k = 1
    while x != e:
        x = compose(x, f)
        k += 1
        if k > G.h:
            raise ArithmeticError(f"{f} has no finite order within h={G.h}")
    return k


def genus_character(ell: int, f: Form) -> int:
    """(r/ell) for a value r of f prime to ell, using a or c."""
    D = -f.disc
    if D % ell:
        raise ValueError(f"{ell} does not divide D={D}")
    r = f.a if f.a % ell else f.c
    return legendre(r, ell)


def epsilon(D: int, f: Form) -> int:
    if f.disc != -D:
        raise FormError(f"{f} does not have discriminant -{D}")
    out = 1
    for ell in prime_factors(D):
        out *= genus_character(ell, f)
    return out


@dataclass(frozen=True)
class OrbitReport:
    D: int
    h: int
    frob_class: Form
    frob_order: int
    orbits: tuple[tuple[Form, ...], ...]
    eps: dict = field(hash=False)
    orbit_eps: tuple[int, ...]
    residue_parity: tuple[int, ...]
    admissible: bool

    @property
    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    def uniform(self) -> bool:
        return all(len(o) == self.frob_order for o in self.orbits)

    def has_odd_residue(self) -> bool:
        return any(self.residue_parity)


class EpsilonNotConstant(ArithmeticError):
    pass


def _admissible(D: int) -> bool:
    return (
        D > 1
        and D % 24 == 23
        and is_squarefree(D)
        and all(p % 8 in (1, 7) for p in prime_factors(D))
    )


def orbit_report(D: int) -> OrbitReport:
    """Split the Heegner set into orbits of translation by the Frobenius class."""
    hs = heegner_set(D)
    G = class_group(D)
    frob = reduce_form(frobenius_form(D))
    order = class_order(G, frob)
    by_class = {c: r for r, c in hs.class_of.items()}

    seen: set[Form] = set()
    orbits = []
    for start in hs.reps:
        if start in seen:
            continue
        orbit = []
        r = start
        while r not in seen:
            seen.add(r)
            orbit.append(r)
            r = by_class[compose(hs.class_of[r], frob)]
        orbits.append(tuple(orbit))

    eps = {r: epsilon(D, r) for r in hs.reps}
    orbit_eps = []
    for o in orbits:
        vals = {eps[r] for r in o}
        if len(vals) != 1:
            raise EpsilonNotConstant(f"D={D}: epsilon takes values {sorted(vals)} on one orbit")
        orbit_eps.append(vals.pop())
    parity = tuple((len(o) * e) % 2 for o, e in zip(orbits, orbit_eps))
    return OrbitReport(
        D=D,
        h=G.h,
        frob_class=frob,
        frob_order=order,
        orbits=tuple(orbits),
        eps=eps,
        orbit_eps=tuple(orbit_eps),
        residue_parity=parity,
        admissible=_admissible(D),
    )


@dataclass(frozen=True)
class OrderConditions:
    D: int
    odd_order: bool  # (1)
    is_square: bool  # (2)
    characters_trivial: bool  # (3)
    primes_split_2: bool  # (4)

    @property
    def one_implies_two(self) -> bool:
        return not self.odd_order or self.is_square

    @property
    def two_implies_one(self) -> bool:
        return not self.is_square or self.odd_order

    @property
    def three_iff_four(self) -> bool:
        return self.characters_trivial == self.primes_split_2

    @property
    def anomaly(self) -> bool:
        """(2), (3), (4) hold while the order is even."""
        return self.is_square and self.characters_trivial and self.primes_split_2 and not self.odd_order

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (self.odd_order, self.is_square, self.characters_trivial, self.primes_split_2)


def odd_order_equivalences(D: int) -> OrderConditions:
    _check_heegner_disc(D)
    G = class_group(D)
    frob = reduce_form(frobenius_form(D))
    return OrderConditions(
        D=D,
        odd_order=class_order(G, frob) % 2 == 1,
        is_square=G.is_square(frob),
        characters_trivial=all(genus_character(ell, frob) == 1 for ell in prime_factors(D)),
        primes_split_2=all(ell % 8 in (1, 7) for ell in prime_factors(D)),
    )
