"""The monoid algebra ZR of (R, *) with exact integer coefficients.

Besides ring arithmetic this provides the augmentation ``pi: ZR -> R``, the
Teichmueller symbols ``[r]``, the coefficient-preserving Frobenius
``phi([r]) = [r^p]`` and the arithmetic derivation

    delta(x) = (phi(x) - x^p) / p.

Note that the symbol ``[0]`` of the ring zero is a basis vector and differs
from the additive zero of ZR (the element with empty support).
"""
from __future__ import annotations

from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping

from gmpy2 import mpz

from .perfect_algebra import AlgebraDescriptor, AlgebraElement, AlgebraError, frobenius


class ArithmeticInconsistency(RuntimeError):
    """An identity that holds mathematically failed; an implementation bug."""


class MonoidAlgebraElement:
    """Finitely supported map R -> Z, written sum n_r [r]."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: AlgebraDescriptor, terms: Mapping[AlgebraElement, int] | None = None):
        self.algebra = algebra
        clean = {}
        if terms:
            for r, c in terms.items():
                if c:
                    if r.descriptor is not algebra and r.descriptor != algebra:
                        raise AlgebraError("support element from a different algebra")
                    clean[r] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, algebra: AlgebraDescriptor, terms: dict) -> "MonoidAlgebraElement":
        # caller guarantees: no zero coefficients, keys belong to algebra
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, algebra: AlgebraDescriptor) -> "MonoidAlgebraElement":
        return cls._raw(algebra, {})

    @classmethod
    def from_int(cls, algebra: AlgebraDescriptor, k: int) -> "MonoidAlgebraElement":
        """k * [1], the image of k under Z -> ZR."""
        return cls._raw(algebra, {algebra.one: k} if k else {})

    @property
    def terms(self) -> Mapping[AlgebraElement, int]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[AlgebraElement, int]]:
        """Terms in canonical order of the support."""
        return sorted(self._terms.items(), key=lambda t: t[0].coeffs)

    def coefficient(self, r: AlgebraElement) -> int:
        return self._terms.get(r, 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MonoidAlgebraElement":
        if isinstance(other, int):
            return MonoidAlgebraElement.from_int(self.algebra, other)
        if not isinstance(other, MonoidAlgebraElement):
            return NotImplemented
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError(f"algebra mismatch: {self.algebra} vs {other.algebra}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for r, c in other._terms.items():
            v = out.get(r, 0) + c
            if v:
                out[r] = v
            else:
                out.pop(r, None)
        return MonoidAlgebraElement._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return MonoidAlgebraElement._raw(self.algebra, {r: -c for r, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, k: int) -> "MonoidAlgebraElement":
        if not k:
            return MonoidAlgebraElement.zero(self.algebra)
        return MonoidAlgebraElement._raw(self.algebra, {r: k * c for r, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MonoidAlgebraElement._raw(self.algebra, _convolve(self._terms, other._terms))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        return NotImplemented

    def __pow__(self, k: int) -> "MonoidAlgebraElement":
        return int_pow(self, k)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MonoidAlgebraElement.from_int(self.algebra, other)
        if not isinstance(other, MonoidAlgebraElement):
            return NotImplemented
        return self._terms == other._terms and self.algebra == other.algebra

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"MonoidAlgebraElement({self})"

    def __str__(self):
        from .parsing import format_element
        return format_element(self)


def _convolve(ta: dict, tb: dict) -> dict:
    out: dict = {}
    get = out.get
    for r, a in ta.items():
        for s, b in tb.items():
            rs = r * s
            out[rs] = get(rs, 0) + a * b
    return {r: c for r, c in out.items() if c}


_INDEX_LIMIT = 256


class _IndexedAlgebra:
    """Elements of a small R numbered 0..|R|-1 with a full product table."""

    def __init__(self, algebra: AlgebraDescriptor):
        self.elements = list(algebra.enumerate())
        self.index = {r: i for i, r in enumerate(self.elements)}
        self.table = [[self.index[r * s] for s in self.elements] for r in self.elements]
        self.frob = [self.index[frobenius(r)] for r in self.elements]


_INDEXED: dict[AlgebraDescriptor, _IndexedAlgebra | None] = {}


def _indexed(algebra: AlgebraDescriptor) -> _IndexedAlgebra | None:
    try:
        return _INDEXED[algebra]
    except KeyError:
        ix = _IndexedAlgebra(algebra) if algebra.size <= _INDEX_LIMIT else None
        _INDEXED[algebra] = ix
        return ix


def _convolve_indexed(ta: dict, tb: dict, table: list) -> dict:
    out: dict = {}
    get = out.get
    for i, a in ta.items():
        row = table[i]
        for j, b in tb.items():
            k = row[j]
            out[k] = get(k, 0) + a * b
    return {k: c for k, c in out.items() if c}


def teichmuller_symbol(r: AlgebraElement) -> MonoidAlgebraElement:
    """The basis element [r]."""
    return MonoidAlgebraElement._raw(r.descriptor, {r: 1})


def from_terms(algebra: AlgebraDescriptor, terms: Iterable[tuple[int, AlgebraElement]]) -> MonoidAlgebraElement:
    """Sum of k*[r] over (k, r) pairs."""
    out: dict[AlgebraElement, int] = {}
    for k, r in terms:
        out[r] = out.get(r, 0) + k
    return MonoidAlgebraElement(algebra, out)


def add(x: MonoidAlgebraElement, y: MonoidAlgebraElement) -> MonoidAlgebraElement:
    return x + y


def neg(x: MonoidAlgebraElement) -> MonoidAlgebraElement:
    return -x


def scalar_mul(x: MonoidAlgebraElement, k: int) -> MonoidAlgebraElement:
    return x.scalar_mul(k)


def mul(x: MonoidAlgebraElement, y: MonoidAlgebraElement) -> MonoidAlgebraElement:
    return x * y


def augmentation_pi(x: MonoidAlgebraElement) -> AlgebraElement:
    """pi(sum n_r [r]) = sum n_r * r, evaluated in R."""
    alg = x.algebra
    p = alg.p
    acc = [[0] * f.e for f in alg.factors]
    for r, c in x._terms.items():
        for vec, coeffs in zip(acc, r.coeffs):
            for i, v in enumerate(coeffs):
                if v:
                    vec[i] += c * v
    return AlgebraElement(alg, tuple(tuple(v % p for v in vec) for vec in acc))


def phi_shift(x: MonoidAlgebraElement) -> MonoidAlgebraElement:
    """sum n_r [r] -> sum n_r [r^p].

    Frobenius is a bijection of R, so keys never collide.
    """
    return MonoidAlgebraElement._raw(x.algebra, {frobenius(r): c for r, c in x._terms.items()})


def int_pow(x: MonoidAlgebraElement, k: int) -> MonoidAlgebraElement:
    """x^k for k >= 1 by square-and-multiply."""
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    # GMP integers inside the loop; iterated delta makes coefficients huge
    ix = _indexed(x.algebra)
    if ix is not None:
        base = {ix.index[r]: mpz(c) for r, c in x._terms.items()}
        conv = lambda a, b: _convolve_indexed(a, b, ix.table)  # noqa: E731
    else:
        base = {r: mpz(c) for r, c in x._terms.items()}
        conv = _convolve
    result = None
    while k:
        if k & 1:
            result = base if result is None else conv(result, base)
        k >>= 1
        if k:
            base = conv(base, base)
    if ix is not None:
        elems = ix.elements
        return MonoidAlgebraElement._raw(x.algebra, {elems[i]: int(c) for i, c in result.items()})
    return MonoidAlgebraElement._raw(x.algebra, {r: int(c) for r, c in result.items()})


def delta(x: MonoidAlgebraElement) -> MonoidAlgebraElement:
    """(phi(x) - x^p) / p, with the division checked term by term."""
    p = x.algebra.p
    if not x:
        return x
    num = phi_shift(x) - int_pow(x, p)
    out = {}
    for r, c in num._terms.items():
        q, rem = divmod(c, p)
        if rem:
            raise ArithmeticInconsistency(
                f"phi(x) - x^p has coefficient {c} at [{r}] not divisible by p = {p}")
        out[r] = q
    return MonoidAlgebraElement._raw(x.algebra, out)


def binomial_correction(x: MonoidAlgebraElement, y: MonoidAlgebraElement) -> MonoidAlgebraElement:
    """sum_{k=1}^{p-1} (C(p,k)/p) x^k y^(p-k), so that
    delta(x+y) = delta(x) + delta(y) - binomial_correction(x, y)."""
    p = x.algebra.p
    total = MonoidAlgebraElement.zero(x.algebra)
    for k in range(1, p):
        c, rem = divmod(comb(p, k), p)
        if rem:
            raise ArithmeticInconsistency(f"C({p},{k}) not divisible by {p}")
        total = total + (int_pow(x, k) * int_pow(y, p - k)).scalar_mul(c)
    return total
