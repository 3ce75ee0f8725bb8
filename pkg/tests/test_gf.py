"""Field construction, the integer encoding, and the field axioms."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from amcodes.gf import (
    DivisionByZero,
    Field,
    FieldElement,
    MixedFields,
    NonPrimeCharacteristic,
    ReducibleModulus,
    field_from_order,
    parse_field_spec,
)


def brute_force_generators(field):
    """Elements whose multiplicative order is exactly q - 1, found by raw
    power iteration."""
    q = field.order
    gens = []
    for a in range(1, q):
        acc, order = a, 1
        while acc != 1:
            acc = field.mul(acc, a)
            order += 1
        if order == q - 1:
            gens.append(a)
    return gens


def test_f7_primitive_element_is_smallest_generator(f7):
    assert brute_force_generators(f7) == [3, 5]
    assert f7.xi_index == 3


def test_gf9_default_modulus_square_relation(f9):
    # default modulus is t^2 + 1, so t * t = -1 = 2
    assert f9.modulus == (1, 0, 1)
    t = f9.element(3)
    assert (t * t).index == 2


def test_non_prime_characteristic_rejected():
    with pytest.raises(NonPrimeCharacteristic):
        Field(4)
    with pytest.raises(NonPrimeCharacteristic):
        field_from_order(12)


def test_reducible_modulus_rejected():
    # t^2 - 1 = (t-1)(t+1) over GF(3)
    with pytest.raises(ReducibleModulus):
        Field(3, 2, modulus=(2, 0, 1))


def test_arith_examples(f7, f9):
    assert f7.add(3, 5) == 1
    assert f7.inv(3) == 5
    assert f9.mul(3, 3) == 2  # t * t with t at index 3


def test_enumerate_elements(f5, f9):
    assert [e.index for e in f5.elements()] == [0, 1, 2, 3, 4]
    assert len(f9.elements()) == 9
    for field in (f5, f9):
        first, second = field.elements()[:2]
        assert first == field.zero and second == field.one


def test_inv_zero_and_mixed_fields(f5, f7):
    with pytest.raises(DivisionByZero):
        f5.inv(0)
    with pytest.raises(MixedFields):
        f5.element(1) + f7.element(1)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 13])
def test_field_axioms_exhaustive(q):
    field = field_from_order(q)
    elems = range(q)
    for a in elems:
        for b in elems:
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            for c in elems:
                assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
                assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
                assert field.mul(a, field.add(b, c)) == field.add(
                    field.mul(a, b), field.mul(a, c)
                )


@pytest.mark.parametrize("q", [16, 25, 27])
def test_field_axioms_random_triples(q):
    field = field_from_order(q)
    rng = np.random.default_rng(42)
    for a, b, c in rng.integers(0, q, size=(300, 3)):
        a, b, c = int(a), int(b), int(c)
        assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, field.add(b, c)) == field.add(
            field.mul(a, b), field.mul(a, c)
        )


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13, 16])
def test_unit_group_relations(q):
    field = field_from_order(q)
    for a in range(1, q):
        assert field.mul(a, field.inv(a)) == 1
        assert field.pow(a, q - 1) == 1
        assert field.pow(a, q) == a


@pytest.mark.parametrize("q,M", [(5, 3), (7, 3), (9, 15), (11, 15), (13, 15)])
def test_power_map_image_size(q, M):
    # the image of x -> x^M on the units has size (q-1)/gcd(M, q-1)
    field = field_from_order(q)
    image = {field.pow(a, M) for a in range(1, q)}
    assert len(image) == (q - 1) // math.gcd(M, q - 1)


@given(st.integers(0, 8), st.integers(-20, 20))
def test_pow_matches_repeated_multiplication(a, n):
    field = field_from_order(9)
    if a == 0 and n < 0:
        with pytest.raises(DivisionByZero):
            field.pow(a, n)
        return
    acc = 1
    base = a if n >= 0 else field.inv(a) if a else 0
    for _ in range(abs(n)):
        acc = field.mul(acc, base)
    assert field.pow(a, n) == acc


def test_element_operators(f7):
    a, b = f7.element(3), f7.element(5)
    assert (a + b).index == 1
    assert (a - b).index == 5
    assert (a * b).index == 1
    assert (a / b).index == f7.mul(3, f7.inv(5))
    assert (-a).index == 4
    assert (a**3).index == f7.pow(3, 3)
    assert a.inverse().index == 5
    assert bool(f7.zero) is False and bool(a) is True


def test_parse_field_spec():
    assert parse_field_spec("9").order == 9
    assert parse_field_spec("3^2").order == 9
    f = parse_field_spec("3^2", "101")  # t^2 + 1, digits high to low
    assert f.modulus == (1, 0, 1)
    with pytest.raises(NonPrimeCharacteristic):
        parse_field_spec("6")


def test_numpy_tables_agree_with_scalar_ops(f9):
    add, mul = f9.add_table(), f9.mul_table()
    sub, inv = f9.sub_table(), f9.inv_table()
    for a in range(9):
        for b in range(9):
            assert add[a, b] == f9.add(a, b)
            assert mul[a, b] == f9.mul(a, b)
            assert sub[a, b] == f9.sub(a, b)
        if a:
            assert inv[a] == f9.inv(a)


def test_tables_refused_above_limit():
    big = Field(521)  # prime above the table limit
    with pytest.raises(Exception):
        big.add_table()
    assert big.mul(500, 500) == (500 * 500) % 521
