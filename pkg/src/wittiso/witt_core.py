"""Witt coordinates on ZR/I^n computed with the arithmetic derivation.

The explicit maps ZR/I^n -> W_n(R):

* n = 2, every p:  (pi(x), pi(delta(x)))
* n = 3, every p:  third coordinate pi(delta(delta(x - [r0]) + (-1)^p [r1]))
* 2 <= n <= p:     r_nu = pi(a_nu) with a_0 = x, a_nu = delta(a_{nu-1} - [r_{nu-1}])

and the inverse beta_n(r) = sum_k p^k [phi^{-k}(r_k)].  Congruence modulo I^n
is decided through the Galois-ring oracle, never through these formulas.

Every function taking ``capped=True`` reduces the level-nu accumulator
modulo p^(n-nu).  This changes no coordinate: p^m ZR lies in I^m, and for
m >= 2, x = y mod p^m implies delta(x) = delta(y) mod p^(m-1).  Without the
cap, coefficients grow like C^(p^nu).
"""
from __future__ import annotations

import random

from .monoid_algebra import (
    ArithmeticInconsistency,
    MonoidAlgebraElement,
    _indexed,
    augmentation_pi,
    delta,
    teichmuller_symbol,
)
from .perfect_algebra import AlgebraDescriptor, AlgebraElement, frobenius_power
from .witt_oracle import canonical_map, canonical_map_gr
from .witt_vector import WittVector

__all__ = [
    "UnsupportedTruncation", "WittVector", "alpha", "alpha_2", "alpha_3",
    "alpha_3_component", "alpha_n_nested", "alpha_n_theorem1", "beta_n",
    "congruent_mod_In", "in_I_power", "is_supported", "quotient_add",
    "quotient_mul", "reduce_coefficients", "sample_In",
]


class UnsupportedTruncation(ValueError):
    """No explicit formula for this level at this prime (needs p >= n)."""

    def __init__(self, p: int, n: int):
        super().__init__(
            f"no explicit alpha_{n} at p = {p}: the recursive formula requires p >= n "
            f"(and n = 2, 3 are available for every p)")
        self.p = p
        self.n = n


def beta_n(w: WittVector) -> MonoidAlgebraElement:
    """sum_k p^k [phi^{-k}(r_k)] as an element of ZR (not reduced)."""
    p = w.p
    terms: dict = {}
    for k, r in enumerate(w.components):
        key = frobenius_power(r, -k)
        terms[key] = terms.get(key, 0) + p ** k
    return MonoidAlgebraElement(w.algebra, terms)


def reduce_coefficients(x: MonoidAlgebraElement, m: int) -> MonoidAlgebraElement:
    """Coefficients replaced by their symmetric residues mod p^m."""
    q = x.algebra.p ** m
    half = q // 2
    out = {}
    for r, c in x.terms.items():
        c = (c + half) % q - half
        if c:
            out[r] = c
    return MonoidAlgebraElement(x.algebra, out)


def _prep(x: MonoidAlgebraElement, m: int, capped: bool) -> MonoidAlgebraElement:
    return reduce_coefficients(x, m) if capped else x


def alpha_2(x: MonoidAlgebraElement, *, capped: bool = False) -> WittVector:
    x = _prep(x, 2, capped)
    return WittVector(x.algebra, (augmentation_pi(x), augmentation_pi(delta(x))))


def alpha_3_component(x: MonoidAlgebraElement, sign: int | None = None, *, capped: bool = False):
    """Third coordinate of alpha_3; ``sign`` defaults to (-1)^p."""
    p = x.algebra.p
    if sign is None:
        sign = (-1) ** p
    x = _prep(x, 3, capped)
    r0 = augmentation_pi(x)
    r1 = augmentation_pi(delta(x))
    inner = _prep(delta(x - teichmuller_symbol(r0)), 2, capped)
    inner = inner + teichmuller_symbol(r1).scalar_mul(sign)
    return augmentation_pi(delta(inner))


def alpha_3(x: MonoidAlgebraElement, sign: int | None = None, *, capped: bool = False) -> WittVector:
    """(pi(x), pi(delta(x)), pi(delta(delta(x - [pi x]) + (-1)^p [pi delta x])))."""
    x = _prep(x, 3, capped)
    r0 = augmentation_pi(x)
    r1 = augmentation_pi(delta(x))
    return WittVector(x.algebra, (r0, r1, alpha_3_component(x, sign, capped=capped)))


def _sym(c: int, q: int) -> int:
    c %= q
    return c - q if c > q // 2 else c


def _pow_mod(terms: dict, k: int, q: int, table: list) -> dict:
    result = None
    base = terms
    while k:
        if k & 1:
            result = base if result is None else _conv_mod(result, base, q, table)
        k >>= 1
        if k:
            base = _conv_mod(base, base, q, table)
    return result


def _conv_mod(a: dict, b: dict, q: int, table: list) -> dict:
    out: dict = {}
    get = out.get
    for i, u in a.items():
        row = table[i]
        for j, v in b.items():
            k = row[j]
            out[k] = get(k, 0) + u * v
    return {k: c % q for k, c in out.items()}


def _theorem1_indexed(x: MonoidAlgebraElement, n: int, ix) -> WittVector:
    """Capped recursion on index-keyed dicts, for algebras with a product table.

    Level nu keeps its accumulator mod p^(n-nu), so phi(a) - a^p is only
    needed mod p^(n-nu) before the exact division by p.
    """
    alg = x.algebra
    p = alg.p
    index, table, frob, elements = ix.index, ix.table, ix.frob, ix.elements
    q = p ** n
    acc = {}
    for r, c in x.terms.items():
        c = _sym(c, q)
        if c:
            acc[index[r]] = c
    comps: list[AlgebraElement] = []
    for nu in range(n):
        r = augmentation_pi(MonoidAlgebraElement._raw(alg, {elements[i]: c for i, c in acc.items()}))
        comps.append(r)
        if nu == n - 1:
            break
        i0 = index[r]
        acc = dict(acc)
        c = acc.get(i0, 0) - 1
        if c:
            acc[i0] = c
        else:
            acc.pop(i0, None)
        if not acc:
            comps.extend([alg.zero] * (n - 1 - nu))
            break
        # delta(acc) mod p^(n-nu-1) from phi(acc) - acc^p mod p^(n-nu)
        q = p ** (n - nu)
        num = {frob[i]: c for i, c in acc.items()}
        for k, c in _pow_mod(acc, p, q, table).items():
            num[k] = num.get(k, 0) - c
        q_next = q // p
        nxt = {}
        for k, c in num.items():
            c %= q
            if c % p:
                raise ArithmeticInconsistency(
                    f"phi(x) - x^p has coefficient {c} at [{elements[k]}] not divisible by p = {p}")
            c = _sym(c // p, q_next)
            if c:
                nxt[k] = c
        acc = nxt
    return WittVector(alg, tuple(comps))


def alpha_n_theorem1(x: MonoidAlgebraElement, n: int, *, capped: bool = False) -> WittVector:
    """The delta-recursion for 2 <= n <= p, one delta per level."""
    p = x.algebra.p
    if n < 2 or n > p:
        raise UnsupportedTruncation(p, n)
    if capped:
        ix = _indexed(x.algebra)
        if ix is not None:
            return _theorem1_indexed(x, n, ix)
    acc = _prep(x, n, capped)
    comps = [augmentation_pi(acc)]
    for nu in range(1, n):
        acc = _prep(delta(acc - teichmuller_symbol(comps[-1])), n - nu, capped)
        comps.append(augmentation_pi(acc))
    return WittVector(x.algebra, tuple(comps))


def alpha_n_nested(x: MonoidAlgebraElement, n: int) -> WittVector:
    """Same map, but each r_nu re-evaluated from the fully nested expression.

    Quadratically many deltas; only meant as a cross-check of the
    accumulator version.
    """
    p = x.algebra.p
    if n < 2 or n > p:
        raise UnsupportedTruncation(p, n)
    comps = [augmentation_pi(x)]
    for nu in range(1, n):
        expr = x
        for j in range(nu):
            expr = delta(expr - teichmuller_symbol(comps[j]))
        comps.append(augmentation_pi(expr))
    return WittVector(x.algebra, tuple(comps))


def is_supported(p: int, n: int) -> bool:
    return n in (1, 2, 3) or 4 <= n <= p


def alpha(x: MonoidAlgebraElement, n: int, *, capped: bool = False,
          alpha3_sign: int | None = None) -> WittVector:
    """Dispatch to the widest formula valid for (p, n).

    ``alpha3_sign`` overrides the (-1)^p of alpha_3 (mutation testing only).
    """
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    p = x.algebra.p
    if n == 1:
        return WittVector(x.algebra, (augmentation_pi(x),))
    if n == 2:
        return alpha_2(x, capped=capped)
    if n == 3:
        return alpha_3(x, alpha3_sign, capped=capped)
    if n <= p:
        return alpha_n_theorem1(x, n, capped=capped)
    raise UnsupportedTruncation(p, n)


def congruent_mod_In(x: MonoidAlgebraElement, y: MonoidAlgebraElement, n: int) -> bool:
    """x = y mod I^n, decided by the oracle's canonical map."""
    if n <= 0:
        return True
    diff = x - y
    return all(not any(v) for v in canonical_map_gr(diff, n).coeffs)


def in_I_power(x: MonoidAlgebraElement, n: int) -> bool:
    return congruent_mod_In(x, MonoidAlgebraElement.zero(x.algebra), n)


def sample_In(algebra: AlgebraDescriptor, n: int, rng: random.Random, *,
              summands: int = 1, scale: int = 1) -> MonoidAlgebraElement:
    """Random element of I^n: sums of products of n generators [r] + [s] - [r+s].

    Each summand also gets a random integer multiplier in [-scale, scale].
    """
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    total = MonoidAlgebraElement.zero(algebra)
    for _ in range(summands):
        prod = MonoidAlgebraElement.from_int(algebra, 1)
        for _ in range(n):
            r = algebra.random_element(rng)
            s = algebra.random_element(rng)
            z = teichmuller_symbol(r) + teichmuller_symbol(s) - teichmuller_symbol(r + s)
            prod = prod * z
        k = rng.randint(-scale, scale) if scale > 1 else 1
        total = total + prod.scalar_mul(k)
    return total


def _renormalise(x: MonoidAlgebraElement, n: int) -> WittVector:
    if is_supported(x.algebra.p, n):
        return alpha(x, n)
    return canonical_map(x, n)


def quotient_add(w1: WittVector, w2: WittVector) -> WittVector:
    """Addition in ZR/I^n carried out on Witt normal forms."""
    if w1.n != w2.n:
        raise ValueError(f"level mismatch: {w1.n} vs {w2.n}")
    return _renormalise(beta_n(w1) + beta_n(w2), w1.n)


def quotient_mul(w1: WittVector, w2: WittVector) -> WittVector:
    if w1.n != w2.n:
        raise ValueError(f"level mismatch: {w1.n} vs {w2.n}")
    return _renormalise(beta_n(w1) * beta_n(w2), w1.n)
