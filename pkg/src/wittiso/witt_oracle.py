"""Classical model of W_n(R) through Galois rings.

For a field factor F_{p^e} = F_p[g]/(f) the ring W_n(F_{p^e}) is realised as
Z[x]/(p^n, f~) where f~ is f with its coefficients read in Z/p^n.  A product
algebra gets one Galois ring per factor.  Witt coordinates are the digits of
the expansion y = sum_k p^k tau(phi^{-k}(r_k)) with tau the Teichmueller lift.

Nothing here touches the delta-calculus in ``witt_core``; this module is the
independent ground truth the explicit formulas are checked against.
"""
from __future__ import annotations

import threading
from functools import lru_cache

from .monoid_algebra import ArithmeticInconsistency, MonoidAlgebraElement
from .perfect_algebra import AlgebraDescriptor, AlgebraElement, AlgebraError, frobenius
from .witt_vector import WittVector


@lru_cache(maxsize=None)
def galois_ring(algebra: AlgebraDescriptor, n: int) -> "GaloisRing":
    return GaloisRing(algebra, n)


class GaloisRing:
    """prod_i Z[x]/(p^n, f_i) for the factors of ``algebra``."""

    def __init__(self, algebra: AlgebraDescriptor, n: int):
        if n < 0:
            raise ValueError(f"level must be >= 0, got {n}")
        self.algebra = algebra
        self.n = n
        self.p = algebra.p
        self.modulus = algebra.p ** n
        # monic lift: coefficients reused verbatim
        self.lifted = tuple(f.modulus for f in algebra.factors)

    def __repr__(self):
        return f"GaloisRing({self.algebra}, n={self.n})"

    def element(self, coeffs) -> "GaloisRingElement":
        m = self.modulus
        return GaloisRingElement(self, tuple(tuple(c % m for c in v) for v in coeffs))

    def from_int(self, k: int) -> "GaloisRingElement":
        return self.element(tuple((k,) + (0,) * (f.e - 1) for f in self.algebra.factors))

    @property
    def zero(self) -> "GaloisRingElement":
        return self.from_int(0)

    @property
    def one(self) -> "GaloisRingElement":
        return self.from_int(1)

    def lift(self, r: AlgebraElement) -> "GaloisRingElement":
        """Naive lift: coefficients of r in [0, p) read in Z/p^n."""
        return self.element(r.coeffs)


def _mulmod(a, b, f, m):
    e = len(f) - 1
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for j in range(e):
                prod[k - e + j] -= c * f[j]
    return tuple(c % m for c in prod[:e])


class GaloisRingElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: GaloisRing, coeffs: tuple[tuple[int, ...], ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other):
        if self.ring is not other.ring and (
                self.ring.n != other.ring.n or self.ring.algebra != other.ring.algebra):
            raise AlgebraError(f"Galois ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        m = self.ring.modulus
        return GaloisRingElement(self.ring, tuple(
            tuple((u + v) % m for u, v in zip(a, b)) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        m = self.ring.modulus
        return GaloisRingElement(self.ring, tuple(
            tuple((u - v) % m for u, v in zip(a, b)) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        m = self.ring.modulus
        return GaloisRingElement(self.ring, tuple(tuple((-u) % m for u in a) for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            m = self.ring.modulus
            return GaloisRingElement(self.ring, tuple(
                tuple((other * u) % m for u in a) for a in self.coeffs))
        self._check(other)
        m = self.ring.modulus
        return GaloisRingElement(self.ring, tuple(
            (a[0] * b[0] % m,) if len(f) == 2 else _mulmod(a, b, f, m)
            for f, a, b in zip(self.ring.lifted, self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, GaloisRingElement):
            return NotImplemented
        return (self.ring.n == other.ring.n and self.coeffs == other.coeffs
                and self.ring.algebra == other.ring.algebra)

    def __hash__(self):
        return hash((self.ring.n, self.coeffs))

    def __repr__(self):
        return f"GaloisRingElement({[list(v) for v in self.coeffs]} mod {self.ring.p}^{self.ring.n})"

    def residue(self) -> AlgebraElement:
        """Reduction mod p, an element of R."""
        return self.ring.algebra.element([[c % self.ring.p for c in v] for v in self.coeffs])

    def reduce_to(self, m: int) -> "GaloisRingElement":
        """Image in the level-m ring (m <= n)."""
        return galois_ring(self.ring.algebra, m).element(self.coeffs)

    def divide_by_p(self) -> "GaloisRingElement":
        """y / p as an element of the level n-1 ring; y must be divisible by p."""
        p = self.ring.p
        out = []
        for v in self.coeffs:
            row = []
            for c in v:
                q, rem = divmod(c, p)
                if rem:
                    raise ArithmeticInconsistency(f"{self!r} is not divisible by p")
                row.append(q)
            out.append(tuple(row))
        return galois_ring(self.ring.algebra, self.ring.n - 1).element(out)


def gr_add(a: GaloisRingElement, b: GaloisRingElement) -> GaloisRingElement:
    return a + b


def gr_mul(a: GaloisRingElement, b: GaloisRingElement) -> GaloisRingElement:
    return a * b


def gr_neg(a: GaloisRingElement) -> GaloisRingElement:
    return -a


# entries are deterministic, so concurrent writers store the same value
_TEICHMULLER_CACHE: dict[tuple[AlgebraDescriptor, int, AlgebraElement], GaloisRingElement] = {}
_CACHE_LOCK = threading.Lock()


def teichmuller(r: AlgebraElement, n: int) -> GaloisRingElement:
    """The multiplicative lift of r to level n.

    Per factor of degree e: start from any lift and apply t -> t^(p^e)
    n - 1 times; each step fixes one more p-adic digit.
    """
    key = (r.descriptor, n, r)
    hit = _TEICHMULLER_CACHE.get(key)
    if hit is not None:
        return hit
    ring = galois_ring(r.descriptor, n)
    naive = ring.lift(r)
    coeffs = []
    for i, f in enumerate(r.descriptor.factors):
        sub = galois_ring(AlgebraDescriptor(r.descriptor.p, (f,)), n)
        t = GaloisRingElement(sub, (naive.coeffs[i],))
        q = f.size
        for _ in range(n - 1):
            t = t ** q
        coeffs.append(t.coeffs[0])
    value = GaloisRingElement(ring, tuple(coeffs))
    with _CACHE_LOCK:
        _TEICHMULLER_CACHE.setdefault(key, value)
    return value


def to_witt_coordinates(y: GaloisRingElement) -> WittVector:
    """Digits r_k with y = sum_k p^k tau(phi^{-k}(r_k))."""
    n = y.ring.n
    comps = []
    for k in range(n):
        d = y.residue()
        r = d
        for _ in range(k):
            r = frobenius(r)
        comps.append(r)
        if k < n - 1:
            y = (y - teichmuller(d, y.ring.n)).divide_by_p()
    return WittVector(y.ring.algebra, tuple(comps))


def from_witt_coordinates(w: WittVector) -> GaloisRingElement:
    """sum_k p^k tau(phi^{-k}(r_k))."""
    n = w.n
    ring = galois_ring(w.algebra, n)
    acc = ring.zero
    pk = 1
    for k, r in enumerate(w.components):
        for _ in range(k):
            r = r.frobenius_inv()
        acc = acc + teichmuller(r, n) * pk
        pk *= w.p
    return acc


def canonical_map_gr(x: MonoidAlgebraElement, n: int) -> GaloisRingElement:
    """The ring map ZR -> W_n(R) sending [r] to tau(r), in the Galois ring."""
    ring = galois_ring(x.algebra, n)
    acc = ring.zero
    for r, c in x.terms.items():
        acc = acc + teichmuller(r, n) * c
    return acc


def canonical_map(x: MonoidAlgebraElement, n: int) -> WittVector:
    """Witt coordinates of the image of x under [r] -> tau(r)."""
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    return to_witt_coordinates(canonical_map_gr(x, n))


def _same(w1: WittVector, w2: WittVector) -> None:
    if w1.n != w2.n:
        raise AlgebraError(f"level mismatch: {w1.n} vs {w2.n}")
    if w1.algebra != w2.algebra:
        raise AlgebraError("algebra mismatch")


def witt_add(w1: WittVector, w2: WittVector) -> WittVector:
    _same(w1, w2)
    return to_witt_coordinates(from_witt_coordinates(w1) + from_witt_coordinates(w2))


def witt_mul(w1: WittVector, w2: WittVector) -> WittVector:
    _same(w1, w2)
    return to_witt_coordinates(from_witt_coordinates(w1) * from_witt_coordinates(w2))


def witt_neg(w: WittVector) -> WittVector:
    return to_witt_coordinates(-from_witt_coordinates(w))
