"""Batch property suites behind ``wittiso check``.

Each property draws its inputs from a seeded ``random.Random`` and reports
pass/fail together with the smallest counterexample it saw.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable

from . import monoid_algebra as ma
from .monoid_algebra import MonoidAlgebraElement, augmentation_pi, delta, phi_shift, teichmuller_symbol
from .parsing import format_element, parse_element
from .perfect_algebra import AlgebraDescriptor, frobenius, frobenius_inv
from .witt_core import (
    alpha, alpha_3_component, alpha_n_nested, beta_n, congruent_mod_In, is_supported, sample_In,
)
from .witt_oracle import (
    canonical_map, from_witt_coordinates, teichmuller, to_witt_coordinates, witt_add, witt_mul,
)
from .witt_polynomials import DEFAULT_BOUNDS, get_witt_polynomials, poly_backend_add, poly_backend_mul
from .witt_vector import WittVector

MUTATIONS = ("sign-flip-alpha3",)


def default_algebras() -> list[AlgebraDescriptor]:
    return [
        AlgebraDescriptor.field(2),
        AlgebraDescriptor.field(2, 2),
        AlgebraDescriptor.product(2, [1, 2]),
        AlgebraDescriptor.field(3),
        AlgebraDescriptor.field(3, 2),
        AlgebraDescriptor.field(5),
        AlgebraDescriptor.field(7),
    ]


def random_element(alg: AlgebraDescriptor, rng: random.Random, *,
                   max_support: int = 5, bound: int = 100) -> MonoidAlgebraElement:
    terms = {}
    for _ in range(rng.randint(1, max_support)):
        terms[alg.random_element(rng)] = rng.randint(-bound, bound)
    return MonoidAlgebraElement(alg, terms)


def random_witt(alg: AlgebraDescriptor, n: int, rng: random.Random) -> WittVector:
    return WittVector(alg, tuple(alg.random_element(rng) for _ in range(n)))


def supported_levels(p: int, top: int = 5) -> list[int]:
    return [n for n in range(1, top + 1) if is_supported(p, n)]


@dataclass
class PropertyResult:
    name: str
    passed: bool
    samples: int
    checks: int
    counterexample: str | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "samples": self.samples,
                "checks": self.checks, "counterexample": self.counterexample}


@dataclass
class CheckContext:
    algebras: list[AlgebraDescriptor]
    rng: random.Random
    samples: int
    mutate: str | None = None
    cache_dir: str | None = None

    def alpha(self, x: MonoidAlgebraElement, n: int) -> WittVector:
        sign = None
        if self.mutate == "sign-flip-alpha3":
            sign = -((-1) ** x.algebra.p)
        return alpha(x, n, alpha3_sign=sign)


class _Collector:
    """Counts samples and keeps the shortest failing description."""

    def __init__(self):
        self.count = 0
        self.worst: str | None = None

    def check(self, ok: bool, describe: Callable[[], str]) -> None:
        self.count += 1
        if not ok:
            d = describe()
            if self.worst is None or len(d) < len(self.worst):
                self.worst = d


PROPERTIES: dict[str, Callable[[CheckContext, _Collector], None]] = {}


def prop(name: str):
    def deco(fn):
        PROPERTIES[name] = fn
        return fn
    return deco


def _elements(alg: AlgebraDescriptor, ctx: CheckContext, limit: int = 64):
    if alg.size <= limit:
        return list(alg.enumerate())
    return [alg.random_element(ctx.rng) for _ in range(ctx.samples)]


@prop("perfect_algebra.frobenius_bijective")
def _frob_bij(ctx, col):
    for alg in ctx.algebras:
        for a in _elements(alg, ctx):
            col.check(frobenius_inv(frobenius(a)) == a and frobenius(frobenius_inv(a)) == a,
                      lambda: f"{alg}: a = {a}")


@prop("perfect_algebra.frobenius_ring_hom")
def _frob_hom(ctx, col):
    for alg in ctx.algebras:
        elems = _elements(alg, ctx, limit=16)
        for a, b in itertools.product(elems, repeat=2):
            ok = frobenius(a + b) == frobenius(a) + frobenius(b) and \
                frobenius(a * b) == frobenius(a) * frobenius(b)
            col.check(ok, lambda: f"{alg}: a = {a}, b = {b}")


@prop("perfect_algebra.characteristic_p")
def _char_p(ctx, col):
    for alg in ctx.algebras:
        for a in _elements(alg, ctx):
            col.check(a.scale(alg.p).is_zero(), lambda: f"{alg}: a = {a}")


@prop("monoid_algebra.delta_sum_rule")
def _delta_sum(ctx, col):
    for alg in ctx.algebras:
        for _ in range(ctx.samples):
            x = random_element(alg, ctx.rng, max_support=4, bound=50)
            y = random_element(alg, ctx.rng, max_support=4, bound=50)
            ok = delta(x + y) == delta(x) + delta(y) - ma.binomial_correction(x, y)
            col.check(ok, lambda: f"{alg}: x = {x}, y = {y}")


@prop("monoid_algebra.delta_product_rule")
def _delta_prod(ctx, col):
    for alg in ctx.algebras:
        p = alg.p
        for _ in range(ctx.samples):
            x = random_element(alg, ctx.rng, max_support=3, bound=20)
            y = random_element(alg, ctx.rng, max_support=3, bound=20)
            ok = delta(x * y) == delta(x) * phi_shift(y) + (x ** p) * delta(y)
            col.check(ok, lambda: f"{alg}: x = {x}, y = {y}")


def nfold_delta(xs: list[MonoidAlgebraElement]) -> MonoidAlgebraElement:
    """sum_k x_1^p ... x_{k-1}^p delta(x_k) phi(x_{k+1}) ... phi(x_n)."""
    p = xs[0].algebra.p
    total = MonoidAlgebraElement.zero(xs[0].algebra)
    for k in range(len(xs)):
        term = delta(xs[k])
        for j in range(k):
            term = term * xs[j] ** p
        for j in range(k + 1, len(xs)):
            term = term * phi_shift(xs[j])
        total = total + term
    return total


@prop("monoid_algebra.delta_nfold_product")
def _delta_nfold(ctx, col):
    for alg in ctx.algebras:
        for _ in range(max(1, ctx.samples // 2)):
            for m in (3, 4):
                xs = [random_element(alg, ctx.rng, max_support=2, bound=5) for _ in range(m)]
                prod = xs[0]
                for x in xs[1:]:
                    prod = prod * x
                col.check(delta(prod) == nfold_delta(xs),
                          lambda: f"{alg}: factors = {[str(x) for x in xs]}")


@prop("monoid_algebra.delta_teichmuller_zero")
def _delta_teich(ctx, col):
    for alg in ctx.algebras:
        for r in _elements(alg, ctx):
            col.check(not delta(teichmuller_symbol(r)), lambda: f"{alg}: r = {r}")


@prop("monoid_algebra.pi_intertwines_frobenius")
def _pi_frob(ctx, col):
    for alg in ctx.algebras:
        for _ in range(ctx.samples):
            x = random_element(alg, ctx.rng)
            col.check(augmentation_pi(phi_shift(x)) == frobenius(augmentation_pi(x)),
                      lambda: f"{alg}: x = {x}")


@prop("witt_core.oracle_equivalence")
def _oracle_eq(ctx, col):
    for alg in ctx.algebras:
        for n in supported_levels(alg.p):
            for _ in range(ctx.samples):
                x = random_element(alg, ctx.rng)
                col.check(ctx.alpha(x, n) == canonical_map(x, n),
                          lambda: f"{alg}, n={n}: x = {x}")


@prop("witt_core.round_trip")
def _round_trip(ctx, col):
    for alg in ctx.algebras:
        for n in supported_levels(alg.p):
            for _ in range(ctx.samples):
                w = random_witt(alg, n, ctx.rng)
                col.check(ctx.alpha(beta_n(w), n) == w, lambda: f"{alg}, n={n}: w = {w}")


@prop("witt_core.section")
def _section(ctx, col):
    for alg in ctx.algebras:
        for n in supported_levels(alg.p):
            for _ in range(ctx.samples):
                x = random_element(alg, ctx.rng)
                col.check(congruent_mod_In(beta_n(ctx.alpha(x, n)), x, n),
                          lambda: f"{alg}, n={n}: x = {x}")


@prop("witt_core.ring_homomorphism")
def _ring_hom(ctx, col):
    for alg in ctx.algebras:
        for n in supported_levels(alg.p):
            for _ in range(max(1, ctx.samples // 2)):
                x = random_element(alg, ctx.rng)
                y = random_element(alg, ctx.rng)
                ax, ay = ctx.alpha(x, n), ctx.alpha(y, n)
                ok = ctx.alpha(x + y, n) == witt_add(ax, ay) and ctx.alpha(x * y, n) == witt_mul(ax, ay)
                col.check(ok, lambda: f"{alg}, n={n}: x = {x}, y = {y}")


@prop("witt_core.truncation")
def _truncation(ctx, col):
    for alg in ctx.algebras:
        levels = supported_levels(alg.p)
        for n in levels[1:]:
            for _ in range(ctx.samples):
                x = random_element(alg, ctx.rng)
                col.check(ctx.alpha(x, n).truncate(n - 1) == ctx.alpha(x, n - 1),
                          lambda: f"{alg}, n={n}: x = {x}")


@prop("witt_core.nested_expression")
def _nested(ctx, col):
    for alg in ctx.algebras:
        for n in range(2, min(alg.p, 4) + 1):
            for _ in range(max(1, ctx.samples // 4)):
                x = random_element(alg, ctx.rng, bound=20)
                col.check(ctx.alpha(x, n) == alpha_n_nested(x, n), lambda: f"{alg}, n={n}: x = {x}")


def _small_p_algebras(ctx):
    return [a for a in ctx.algebras if a.p <= 5]


@prop("witt_core.delta_respects_congruence")
def _delta_congruence(ctx, col):
    for alg in _small_p_algebras(ctx):
        for n in (1, 2, 3):
            for _ in range(ctx.samples):
                a = random_element(alg, ctx.rng, bound=20)
                b = a + sample_In(alg, n, ctx.rng, summands=2, scale=5)
                col.check(congruent_mod_In(delta(a), delta(b), n - 1),
                          lambda: f"{alg}, n={n}: a = {a}, b = {b}")


@prop("witt_core.delta_additive_mod_lower")
def _delta_mod_lower(ctx, col):
    for alg in _small_p_algebras(ctx):
        for n in (2, 3):
            for _ in range(ctx.samples):
                b = random_element(alg, ctx.rng, bound=20)
                c = sample_In(alg, n - 1, ctx.rng, summands=2, scale=5)
                a = b + c + sample_In(alg, n, ctx.rng)
                col.check(congruent_mod_In(delta(a), delta(b) + delta(c), n - 1),
                          lambda: f"{alg}, n={n}: a = {a}, b = {b}, c = {c}")


@prop("witt_core.delta_additive_split_levels")
def _delta_split_levels(ctx, col):
    for alg in _small_p_algebras(ctx):
        for n in (1, 2, 3):
            for _ in range(ctx.samples):
                j = ctx.rng.randint(0, n)
                a = sample_In(alg, j, ctx.rng, summands=2, scale=3)
                b = sample_In(alg, n - j, ctx.rng, summands=2, scale=3)
                col.check(congruent_mod_In(delta(a + b), delta(a) + delta(b), n),
                          lambda: f"{alg}, n={n}: a = {a}, b = {b}")


@prop("witt_core.delta_of_p")
def _delta_p(ctx, col):
    for alg in ctx.algebras:
        p = alg.p
        x = MonoidAlgebraElement.from_int(alg, p)
        col.check(congruent_mod_In(delta(x), MonoidAlgebraElement.from_int(alg, 1), p - 1),
                  lambda: f"{alg}")


@prop("witt_core.delta_of_p_multiple")
def _delta_p_multiple(ctx, col):
    for alg in _small_p_algebras(ctx):
        p = alg.p
        for _ in range(ctx.samples):
            a = random_element(alg, ctx.rng, bound=20)
            lhs, rhs = delta(a.scalar_mul(p)), phi_shift(a)
            for k in range(1, p):
                col.check(congruent_mod_In(lhs, rhs, k), lambda: f"{alg}, k={k}: a = {a}")


@prop("witt_core.delta_additive_mod_In")
def _delta_mod_In(ctx, col):
    for alg in _small_p_algebras(ctx):
        for n in (1, 2, 3):
            for _ in range(ctx.samples):
                x = random_element(alg, ctx.rng, bound=20)
                y = sample_In(alg, n, ctx.rng, summands=2, scale=5)
                col.check(congruent_mod_In(delta(x + y), delta(x) + delta(y), n),
                          lambda: f"{alg}, n={n}: x = {x}, y = {y}")


@prop("witt_core.delta_lowers_level")
def _delta_lowers(ctx, col):
    for alg in _small_p_algebras(ctx):
        for n in (1, 2, 3, 4):
            for _ in range(ctx.samples):
                y = sample_In(alg, n, ctx.rng, summands=2, scale=5)
                col.check(congruent_mod_In(delta(y), MonoidAlgebraElement.zero(alg), n - 1),
                          lambda: f"{alg}, n={n}: y = {y}")


@prop("witt_core.second_coordinate_shift")
def _second_coordinate(ctx, col):
    for alg in ctx.algebras:
        for _ in range(ctx.samples):
            x = random_element(alg, ctx.rng)
            lhs = augmentation_pi(delta(x))
            rhs = augmentation_pi(delta(x - teichmuller_symbol(augmentation_pi(x))))
            col.check(lhs == rhs, lambda: f"{alg}: x = {x}")


def sign_necessity_sweep(alpha3_sign: int | None = None, bound: int = 8):
    """Over F_2, compare both third-coordinate variants with the oracle on k[1].

    Returns (witnesses where the minus variant is wrong, inputs where the
    formula under test is wrong).
    """
    alg = AlgebraDescriptor.field(2)
    minus_wrong, formula_wrong = [], []
    for k in range(-bound, bound + 1):
        x = MonoidAlgebraElement.from_int(alg, k)
        truth = canonical_map(x, 3)[2]
        if alpha_3_component(x, -1) != truth:
            minus_wrong.append(x)
        if alpha_3_component(x, alpha3_sign) != truth:
            formula_wrong.append(x)
    return minus_wrong, formula_wrong


@prop("witt_core.sign_necessity")
def _sign(ctx, col):
    sign = -1 if ctx.mutate == "sign-flip-alpha3" else None
    minus_wrong, formula_wrong = sign_necessity_sweep(sign)
    col.check(bool(minus_wrong), lambda: "no x = k[1] separates the minus-sign variant")
    for x in [MonoidAlgebraElement.from_int(AlgebraDescriptor.field(2), k) for k in range(-8, 9)]:
        col.check(x not in formula_wrong, lambda: f"F_2, n=3: x = {x}")


@prop("witt_oracle.coordinates_bijective")
def _coords(ctx, col):
    for alg in ctx.algebras:
        for n in (1, 2, 3):
            for _ in range(ctx.samples):
                w = random_witt(alg, n, ctx.rng)
                col.check(to_witt_coordinates(from_witt_coordinates(w)) == w,
                          lambda: f"{alg}, n={n}: w = {w}")


@prop("witt_oracle.teichmuller_multiplicative")
def _teich(ctx, col):
    for alg in ctx.algebras:
        for n in (1, 2, 3):
            for _ in range(ctx.samples):
                r, s = alg.random_element(ctx.rng), alg.random_element(ctx.rng)
                t = teichmuller(r, n)
                q = alg.p ** math.lcm(*(f.e for f in alg.factors))
                ok = teichmuller(r * s, n) == t * teichmuller(s, n) and t ** q == t
                col.check(ok, lambda: f"{alg}, n={n}: r = {r}, s = {s}")


@prop("witt_polynomials.ghost_identities")
def _ghost(ctx, col):
    for p, top in sorted(DEFAULT_BOUNDS.items()):
        for n in range(1, top + 1):
            polys = get_witt_polynomials(p, n, ctx.cache_dir)
            failures = polys.check_ghost_identities()
            col.check(not failures, lambda: f"p={p}, n={n}: {failures}")


@prop("witt_polynomials.backend_agreement")
def _backend(ctx, col):
    for alg in ctx.algebras:
        top = DEFAULT_BOUNDS.get(alg.p, 0)
        for n in range(1, min(top, 3) + 1):
            polys = get_witt_polynomials(alg.p, n, ctx.cache_dir)
            for _ in range(ctx.samples):
                w1, w2 = random_witt(alg, n, ctx.rng), random_witt(alg, n, ctx.rng)
                ok = poly_backend_add(w1, w2, polys) == witt_add(w1, w2) and \
                    poly_backend_mul(w1, w2, polys) == witt_mul(w1, w2)
                col.check(ok, lambda: f"{alg}, n={n}: w1 = {w1}, w2 = {w2}")


@prop("cli.parse_round_trip")
def _parse(ctx, col):
    for alg in ctx.algebras:
        for _ in range(ctx.samples):
            x = random_element(alg, ctx.rng)
            col.check(parse_element(format_element(x), alg) == x, lambda: f"{alg}: {x}")


def run_checks(ctx: CheckContext, names: list[str] | None = None) -> list[PropertyResult]:
    results = []
    for name in sorted(names or PROPERTIES):
        col = _Collector()
        PROPERTIES[name](ctx, col)
        results.append(PropertyResult(name, col.worst is None, ctx.samples, col.count, col.worst))
    return results
