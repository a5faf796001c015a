import itertools

import pytest
from hypothesis import given, strategies as st

from strategies import F2, F2xF2, F3, F4, F8, F9, SMALL_ALGEBRAS, algebras, field_elements
from wittiso.perfect_algebra import (
    DEFAULT_MODULI, AlgebraDescriptor, AlgebraError, FieldFactor, add, enumerate_elements,
    frobenius, frobenius_inv, frobenius_power, is_irreducible, is_prime, mul,
)


def test_addition_examples():
    assert add(F2.one, F2.one) == F2.zero
    g = F4.generator()
    assert add(g, F4.one) == F4.element([1, 1])
    assert F3.from_int(2) + F3.from_int(2) == F3.one


def test_multiplication_examples():
    g = F4.generator()
    assert mul(g, g) == g + F4.one
    for x in F9.enumerate():
        assert x * F9.one == x
    a, b = F2xF2.element([[1], [0]]), F2xF2.element([[0], [1]])
    assert a * b == F2xF2.zero


def test_frobenius_examples():
    g = F4.generator()
    assert frobenius(g) == g + F4.one
    assert frobenius_inv(g) == g + F4.one
    assert frobenius(F3.from_int(2)) == F3.from_int(2)
    assert frobenius_inv(F2.one) == F2.one
    for alg in SMALL_ALGEBRAS:
        assert frobenius(alg.one) == alg.one
        assert frobenius_inv(alg.zero) == alg.zero


@pytest.mark.parametrize("alg,count", [(F2, 2), (F4, 4), (F2xF2, 4), (F8, 8), (F9, 9)])
def test_enumerate_counts(alg, count):
    elems = list(enumerate_elements(alg))
    assert len(elems) == count == alg.size
    assert len(set(elems)) == count
    assert elems == sorted(elems)


def test_enumerate_bound():
    with pytest.raises(AlgebraError):
        list(AlgebraDescriptor.field(2, 5).enumerate(bound=16))


@pytest.mark.parametrize("p,e", sorted(DEFAULT_MODULI))
def test_default_moduli_irreducible(p, e):
    mod = DEFAULT_MODULI[(p, e)]
    assert len(mod) == e + 1 and mod[-1] == 1
    assert is_irreducible(mod, p)


def _monic(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield tail + (1,)


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


@pytest.mark.parametrize("p,e", [k for k in sorted(DEFAULT_MODULI) if k[0] ** k[1] <= 3000])
def test_default_moduli_are_smallest(p, e):
    # independent check: irreducible = not a product of two monic factors
    reducible = {_polymul(a, b, p) for d in range(1, e // 2 + 1)
                 for a in _monic(p, d) for b in _monic(p, e - d)}
    order = lambda m: tuple(reversed(m))
    irreducible = sorted((m for m in _monic(p, e) if m not in reducible), key=order)
    assert DEFAULT_MODULI[(p, e)] == irreducible[0]
    for m in _monic(p, e):
        assert is_irreducible(m, p) == (m not in reducible)


@pytest.mark.parametrize("p,e,modulus", [
    (4, 1, None),           # not prime
    (2, 2, [1, 0, 1]),      # x^2 + 1 = (x + 1)^2
    (3, 2, [0, 1, 1]),      # x^2 + x has a root
    (2, 2, [1, 1, 0]),      # not monic
    (2, 2, [1, 1]),         # wrong degree
])
def test_bad_descriptors_rejected(p, e, modulus):
    with pytest.raises(AlgebraError):
        AlgebraDescriptor.field(p, e, modulus)


def test_user_modulus_accepted():
    alg = AlgebraDescriptor.field(5, 2, [2, 0, 1])   # x^2 + 2, 3 is no square mod 5
    g = alg.generator()
    assert g * g == alg.element([3, 0])
    with pytest.raises(AlgebraError):
        AlgebraDescriptor.field(5, 2, [3, 1, 1])     # discriminant 4 is a square


@pytest.mark.parametrize("n,expected", [(1, False), (2, True), (9, False), (13, True), (91, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_element_validation():
    with pytest.raises(AlgebraError):
        F4.element([1, 0, 1])
    with pytest.raises(AlgebraError):
        F2xF2.element([[1]])
    assert F3.element([5]) == F3.from_int(2)


@pytest.mark.parametrize("alg", [F2, F4, F2xF2, F8, F9, AlgebraDescriptor.product(3, [1, 1])], ids=str)
def test_ring_axioms_exhaustive(alg):
    elems = list(alg.enumerate())
    for a, b in itertools.product(elems, repeat=2):
        assert a + b == b + a and a * b == b * a
    for a, b, c in itertools.product(elems, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("alg", SMALL_ALGEBRAS + [F8, AlgebraDescriptor.field(2, 6)], ids=str)
def test_frobenius_exhaustive(alg):
    elems = list(alg.enumerate())
    assert sorted(frobenius(a) for a in elems) == elems
    for a in elems:
        assert frobenius_inv(frobenius(a)) == a
        assert frobenius(frobenius_inv(a)) == a
    for a, b in itertools.product(elems[:16], elems):
        assert frobenius(a + b) == frobenius(a) + frobenius(b)
        assert frobenius(a * b) == frobenius(a) * frobenius(b)


@given(st.data())
def test_characteristic_p(data):
    alg = data.draw(algebras)
    a = data.draw(field_elements(alg))
    total = alg.zero
    for _ in range(alg.p):
        total = total + a
    assert total.is_zero()
    assert a.scale(alg.p) == alg.zero


@given(st.data(), st.integers(-6, 6))
def test_frobenius_power_composes(data, k):
    alg = data.draw(algebras)
    a = data.draw(field_elements(alg))
    assert frobenius_power(frobenius_power(a, k), -k) == a
    assert frobenius_power(a, k + 1) == frobenius(frobenius_power(a, k))


@given(st.data())
def test_large_field_frobenius(data):
    alg = AlgebraDescriptor.field(13, 4)
    a = data.draw(field_elements(alg))
    b = data.draw(field_elements(alg))
    assert frobenius_inv(frobenius(a)) == a
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius_power(a, 4) == a


def test_product_projection():
    alg = AlgebraDescriptor.product(2, [1, 2])
    a = alg.element([[1], [0, 1]])
    b = alg.element([[1], [1, 1]])
    for i in range(2):
        assert alg.project(a * b, i) == alg.project(a, i) * alg.project(b, i)
        assert alg.project(frobenius(a), i) == frobenius(alg.project(a, i))


def test_field_factor_direct():
    f = FieldFactor.make(2, 2)
    assert f.mul((0, 1), (0, 1)) == (1, 1)
    assert f.frobenius((0, 1)) == (1, 1)
    assert f.size == 4
