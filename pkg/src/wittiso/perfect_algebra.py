"""Finite perfect F_p-algebras: finite fields and finite products of them.

Field elements are stored in polynomial basis, constant coefficient first.
A product algebra is handled factor by factor, so every upper layer only
talks to ``AlgebraDescriptor`` / ``AlgebraElement`` and gets products for free.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, Sequence

DEFAULT_ENUMERATION_BOUND = 2**16
_PRODUCT_CACHE_LIMIT = 1 << 18


class AlgebraError(ValueError):
    """Invalid algebra descriptor or mismatched operands."""


# Lexicographically smallest monic irreducible per (p, e), constant term
# first, leading 1 included.  Regenerate with scripts/gen_moduli.py.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (2, 0, 0, 1),
    (7, 4): (1, 1, 0, 0, 1),
    (11, 2): (1, 0, 1),
    (11, 3): (4, 1, 0, 1),
    (11, 4): (2, 1, 0, 0, 1),
    (13, 2): (2, 0, 1),
    (13, 3): (2, 0, 0, 1),
    (13, 4): (2, 0, 0, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# --- dense polynomials over Z/p (tuples, constant term first) ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """a*b mod (f, p) for monic f; result has length deg f."""
    e = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(e):
                prod[k - e + j] -= c * f[j]
        prod[k] = 0
    out = [c % p for c in prod[:e]]
    out.extend([0] * (e - len(out)))
    return out


def _poly_powmod(a: Sequence[int], k: int, f: Sequence[int], p: int) -> list[int]:
    e = len(f) - 1
    result = [1] + [0] * (e - 1)
    base = list(a)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, f, p)
        k >>= 1
        if k:
            base = _poly_mulmod(base, base, f, p)
    return result


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over Z/p.

    Uses gcd(x^(p^k) - x, f) = 1 for 0 < k < e together with
    x^(p^e) = x mod f.
    """
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p != 1:
        return False
    if e == 1:
        return True
    f = [c % p for c in modulus]
    x = [0, 1] + [0] * (e - 2)
    xq = list(x)
    for k in range(1, e + 1):
        xq = _poly_powmod(xq, p, f, p)
        diff = [(u - v) % p for u, v in zip(xq, x)]
        if k < e:
            g = _poly_gcd(f, diff, p)
            if len(g) != 1:
                return False
        elif any(diff):
            return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e in lexicographic order of
    (c_{e-1}, ..., c_0)."""
    for digits in itertools.product(range(p), repeat=e):
        cand = tuple(reversed(digits)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AlgebraError(f"no irreducible polynomial of degree {e} over F_{p}")


# --- descriptors ------------------------------------------------------------

@dataclass(frozen=True)
class FieldFactor:
    """F_{p^e} = F_p[g]/(modulus)."""

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if self.e < 1:
            raise AlgebraError(f"extension degree must be >= 1, got {self.e}")
        if len(self.modulus) != self.e + 1:
            raise AlgebraError(
                f"modulus {list(self.modulus)} does not have degree {self.e}")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise AlgebraError(f"modulus coefficients must lie in [0, {self.p})")
        if self.modulus[-1] != 1:
            raise AlgebraError(f"modulus {list(self.modulus)} is not monic")
        if not is_irreducible(self.modulus, self.p):
            raise AlgebraError(
                f"modulus {list(self.modulus)} is reducible over F_{self.p}")

    @classmethod
    def make(cls, p: int, e: int = 1, modulus: Sequence[int] | None = None) -> "FieldFactor":
        if modulus is None:
            if e == 1:
                modulus = (0, 1)
            elif (p, e) in DEFAULT_MODULI:
                modulus = DEFAULT_MODULI[(p, e)]
            else:
                modulus = smallest_irreducible(p, e)
        return cls(p, e, tuple(int(c) % p for c in modulus))

    @property
    def size(self) -> int:
        return self.p ** self.e

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        if self.e == 1:
            return ((a[0] * b[0]) % self.p,)
        return _factor_mul(self, a, b)

    def pow(self, a: tuple[int, ...], k: int) -> tuple[int, ...]:
        if self.e == 1:
            return (pow(a[0], k, self.p),)
        return tuple(_poly_powmod(a, k, self.modulus, self.p))

    def frobenius(self, a: tuple[int, ...]) -> tuple[int, ...]:
        if self.e == 1:
            return a
        return _factor_frob(self, a)

    def frobenius_inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        if self.e == 1:
            return a
        return _factor_frob_inv(self, a)


@lru_cache(maxsize=1 << 18)
def _factor_mul(factor: FieldFactor, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(_poly_mulmod(a, b, factor.modulus, factor.p))


@lru_cache(maxsize=1 << 16)
def _factor_frob(factor: FieldFactor, a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(_poly_powmod(a, factor.p, factor.modulus, factor.p))


@lru_cache(maxsize=1 << 16)
def _factor_frob_inv(factor: FieldFactor, a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(_poly_powmod(a, factor.p ** (factor.e - 1), factor.modulus, factor.p))


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A finite perfect F_p-algebra, the product of its ``factors``."""

    p: int
    factors: tuple[FieldFactor, ...]
    _products: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)
    is_prime_field: bool = dc_field(default=False, init=False, compare=False, repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise AlgebraError(f"p = {self.p} is not prime")
        if not self.factors:
            raise AlgebraError("an algebra needs at least one factor")
        for f in self.factors:
            if f.p != self.p:
                raise AlgebraError(f"factor over F_{f.p} in an F_{self.p}-algebra")
        object.__setattr__(self, "is_prime_field", all(f.e == 1 for f in self.factors))

    @classmethod
    def field(cls, p: int, e: int = 1, modulus: Sequence[int] | None = None) -> "AlgebraDescriptor":
        if not is_prime(p):
            raise AlgebraError(f"p = {p} is not prime")
        return cls(p, (FieldFactor.make(p, e, modulus),))

    @classmethod
    def product(cls, p: int, specs: Sequence[tuple[int, Sequence[int] | None] | int]) -> "AlgebraDescriptor":
        """``specs`` holds an extension degree or an (e, modulus) pair per factor."""
        if not is_prime(p):
            raise AlgebraError(f"p = {p} is not prime")
        factors = []
        for spec in specs:
            e, mod = (spec, None) if isinstance(spec, int) else spec
            factors.append(FieldFactor.make(p, e, mod))
        return cls(p, tuple(factors))

    @property
    def size(self) -> int:
        n = 1
        for f in self.factors:
            n *= f.size
        return n

    @property
    def is_field(self) -> bool:
        return len(self.factors) == 1

    def __str__(self):
        parts = []
        for f in self.factors:
            parts.append(f"F_{f.p}" if f.e == 1 else f"F_{f.p}^{f.e}")
        return " x ".join(parts)

    def element(self, coeffs) -> "AlgebraElement":
        """Build an element from per-factor coefficient vectors.

        For a single field factor a flat coefficient list or an int is
        accepted too.
        """
        if isinstance(coeffs, int):
            return self.from_int(coeffs)
        coeffs = list(coeffs)
        if self.is_field and (not coeffs or isinstance(coeffs[0], int)):
            coeffs = [coeffs]
        if len(coeffs) != len(self.factors):
            raise AlgebraError(f"expected {len(self.factors)} factors, got {len(coeffs)}")
        out = []
        for f, c in zip(self.factors, coeffs):
            c = [c] if isinstance(c, int) else list(c)
            if len(c) != f.e:
                raise AlgebraError(f"expected {f.e} coefficients, got {len(c)}")
            out.append(tuple(int(v) % self.p for v in c))
        return AlgebraElement(self, tuple(out))

    def from_int(self, k: int) -> "AlgebraElement":
        k %= self.p
        return AlgebraElement(
            self, tuple((k,) + (0,) * (f.e - 1) for f in self.factors))

    @property
    def zero(self) -> "AlgebraElement":
        return self.from_int(0)

    @property
    def one(self) -> "AlgebraElement":
        return self.from_int(1)

    def generator(self, factor: int = 0) -> "AlgebraElement":
        """The class of g in the given factor, zero elsewhere."""
        vecs = []
        for i, f in enumerate(self.factors):
            v = [0] * f.e
            if i == factor:
                if f.e > 1:
                    v[1] = 1
                else:
                    v[0] = (-f.modulus[0]) % self.p
            vecs.append(tuple(v))
        return AlgebraElement(self, tuple(vecs))

    def enumerate(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator["AlgebraElement"]:
        """Every element once, in canonical order."""
        if self.size > bound:
            raise AlgebraError(f"|R| = {self.size} exceeds enumeration bound {bound}")
        per_factor = [list(itertools.product(range(self.p), repeat=f.e)) for f in self.factors]
        for combo in itertools.product(*per_factor):
            yield AlgebraElement(self, tuple(combo))

    def random_element(self, rng: random.Random) -> "AlgebraElement":
        return AlgebraElement(self, tuple(
            tuple(rng.randrange(self.p) for _ in range(f.e)) for f in self.factors))

    def project(self, a: "AlgebraElement", i: int) -> "AlgebraElement":
        """Image of ``a`` in the i-th factor field."""
        sub = AlgebraDescriptor(self.p, (self.factors[i],))
        return AlgebraElement(sub, (a.coeffs[i],))


class AlgebraElement:
    """Immutable element of a perfect algebra; ordered lexicographically."""

    __slots__ = ("descriptor", "coeffs", "_hash")

    def __init__(self, descriptor: AlgebraDescriptor, coeffs: tuple[tuple[int, ...], ...]):
        self.descriptor = descriptor
        self.coeffs = coeffs
        self._hash = hash(coeffs)

    def _check(self, other: "AlgebraElement") -> None:
        if other.descriptor is not self.descriptor and other.descriptor != self.descriptor:
            raise AlgebraError(f"descriptor mismatch: {self.descriptor} vs {other.descriptor}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        p = self.descriptor.p
        return AlgebraElement(self.descriptor, tuple(
            tuple((u + v) % p for u, v in zip(a, b)) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        p = self.descriptor.p
        return AlgebraElement(self.descriptor, tuple(
            tuple((u - v) % p for u, v in zip(a, b)) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgebraElement":
        p = self.descriptor.p
        return AlgebraElement(self.descriptor, tuple(
            tuple((-u) % p for u in a) for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        table = self.descriptor._products
        key = (self.coeffs, other.coeffs)
        hit = table.get(key)
        if hit is None:
            hit = AlgebraElement(self.descriptor, tuple(
                f.mul(a, b) for f, a, b in zip(self.descriptor.factors, self.coeffs, other.coeffs)))
            if len(table) < _PRODUCT_CACHE_LIMIT:
                table[key] = hit
        return hit

    __rmul__ = __mul__

    def scale(self, k: int) -> "AlgebraElement":
        """k * a via the Z-module structure (k acts mod p)."""
        p = self.descriptor.p
        k %= p
        return AlgebraElement(self.descriptor, tuple(
            tuple((k * u) % p for u in a) for a in self.coeffs))

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            raise ValueError("negative exponent")
        return AlgebraElement(self.descriptor, tuple(
            f.pow(a, k) for f, a in zip(self.descriptor.factors, self.coeffs)))

    def frobenius(self) -> "AlgebraElement":
        return frobenius(self)

    def frobenius_inv(self) -> "AlgebraElement":
        return frobenius_inv(self)

    def is_zero(self) -> bool:
        return not any(any(a) for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        return self.descriptor is other.descriptor or self.descriptor == other.descriptor

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "AlgebraElement") -> bool:
        return self.coeffs < other.coeffs

    def __repr__(self):
        from .parsing import format_field_element
        return f"AlgebraElement({format_field_element(self)})"

    def __str__(self):
        from .parsing import format_field_element
        return format_field_element(self)


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a + b


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def frobenius(a: AlgebraElement) -> AlgebraElement:
    """a ** p."""
    if a.descriptor.is_prime_field:
        return a
    return AlgebraElement(a.descriptor, tuple(
        f.frobenius(c) for f, c in zip(a.descriptor.factors, a.coeffs)))


def frobenius_inv(a: AlgebraElement) -> AlgebraElement:
    """The unique p-th root of a, i.e. a ** (p^(e-1)) in each factor."""
    if a.descriptor.is_prime_field:
        return a
    return AlgebraElement(a.descriptor, tuple(
        f.frobenius_inv(c) for f, c in zip(a.descriptor.factors, a.coeffs)))


def frobenius_power(a: AlgebraElement, k: int) -> AlgebraElement:
    """phi^k for any integer k (negative means inverse Frobenius)."""
    step = frobenius if k >= 0 else frobenius_inv
    for _ in range(abs(k)):
        a = step(a)
    return a


def enumerate_elements(descriptor: AlgebraDescriptor, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[AlgebraElement]:
    return descriptor.enumerate(bound)
