"""Field arithmetic: axioms, Frobenius, enumeration, serialization."""

import random

import pytest

from ptorsion.ff import (FieldError, FiniteField, field, find_irreducible,
                         quadratic_character)


def test_prime_field_arithmetic():
    F = field(7)
    a, b = F.element(3), F.element(5)
    assert (a + b).coeffs == (1,)
    assert (a * b).coeffs == (1,)
    assert (a - b).coeffs == (5,)
    assert (a / b) * b == a
    assert (-a) + a == F.zero()


def test_extension_field_axioms():
    F = field(5, 3)
    rng = random.Random(11)
    for _ in range(50):
        a, b, c = (F.random_element(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
    one = F.one()
    for _ in range(20):
        a = F.random_element(rng)
        if not a.is_zero():
            assert a * a.inverse() == one


def test_pow_matches_repeated_multiplication():
    F = field(3, 2)
    g = F.gen()
    acc = F.one()
    for e in range(10):
        assert g ** e == acc
        acc = acc * g


def test_element_order_divides_group_order():
    F = field(7, 2)
    for a in F:
        if not a.is_zero():
            assert a ** (F.order - 1) == F.one()


def test_frobenius_is_pth_power():
    F = field(5, 4)
    rng = random.Random(3)
    for _ in range(30):
        a = F.random_element(rng)
        assert a.frobenius(1) == a ** 5
        assert a.frobenius(4) == a  # full orbit returns home
    # additivity, the reason it is worth a dedicated method
    a, b = F.random_element(rng), F.random_element(rng)
    assert (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)


def test_enumeration_is_a_bijection():
    F = field(3, 3)
    seen = {a.coeffs for a in F}
    assert len(seen) == 27
    assert F.from_index(0) == F.zero()
    assert F.from_index(1) == F.one()


def test_quadratic_character_counts():
    for p, k in [(5, 1), (7, 1), (3, 2), (5, 2)]:
        F = field(p, k)
        values = [quadratic_character(a) for a in F]
        assert values.count(0) == 1
        assert values.count(1) == (F.order - 1) // 2
        assert values.count(-1) == (F.order - 1) // 2


def test_quadratic_character_is_multiplicative():
    F = field(7, 2)
    rng = random.Random(5)
    for _ in range(40):
        a, b = F.random_element(rng), F.random_element(rng)
        assert (quadratic_character(a * b)
                == quadratic_character(a) * quadratic_character(b))


def test_modulus_is_irreducible_and_reproducible():
    mod1 = find_irreducible(7, 3)
    mod2 = find_irreducible(7, 3)
    assert mod1 == mod2
    F = FiniteField(7, 3, mod1)
    # no element of the subfield chain is a root
    for a in field(7):
        acc = F.zero()
        lift = F.element(a.coeffs[0])
        for c in reversed(mod1):
            acc = acc * lift + F.element(c)
        assert not acc.is_zero()


def test_json_round_trip():
    F = field(5, 2)
    G = FiniteField.from_json(F.to_json())
    assert G == F
    a = F.element([3, 4])
    assert G.element(a.to_json()) == a


def test_mixed_field_arithmetic_rejected():
    with pytest.raises(FieldError):
        field(5).one() + field(7).one()
