import pytest
from hypothesis import given, settings, strategies as st

from carterlab.errors import DivisionByZero, FieldTooLarge, MixedFields, NotPrime
from carterlab.gf import field_arith, field_make, frobenius, is_irreducible

FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1), (3, 3), (5, 2)]


def test_prime_field_modulus():
    F = field_make(3, 1)
    assert F.q == 3 and F.k == 1


def test_gf4_modulus_is_unique_irreducible():
    F = field_make(2, 2)
    assert tuple(F.modulus) == (1, 1, 1)
    a = F.gen()
    assert a * a == a + F.one()


def test_gf27_multiplicative_orders():
    F = field_make(3, 3)
    assert all(x ** 26 == F.one() for x in F.nonzero())


def test_small_arithmetic():
    F3 = field_make(3)
    assert F3(2) * F3(2) == F3(1)
    F7 = field_make(7)
    assert field_arith(F7(3), None, "inv") == F7(5)
    assert field_arith(F7(3), F7(5), "mul") == F7(1)
    assert field_arith(F7(3), None, "pow", 6) == F7(1)


def test_errors():
    with pytest.raises(NotPrime):
        field_make(6)
    with pytest.raises(FieldTooLarge):
        field_make(2, 17)
    with pytest.raises(DivisionByZero):
        field_make(5)(0).inverse()
    with pytest.raises(MixedFields):
        field_make(5)(1) + field_make(7)(1)


def test_frobenius_order_three_on_gf8():
    F = field_make(2, 3)
    for x in F.elements():
        assert frobenius(frobenius(frobenius(x))) == x
        assert frobenius(x, 3) == x
    assert any(frobenius(x) != x for x in F.elements())


def test_moduli_irreducible():
    for p, k in FIELDS:
        F = field_make(p, k)
        assert is_irreducible(F.modulus, p)


@st.composite
def field_triples(draw):
    p, k = draw(st.sampled_from(FIELDS))
    F = field_make(p, k)
    xs = draw(st.lists(st.integers(0, F.q - 1), min_size=3, max_size=3))
    return F, [F(x) for x in xs]


@settings(max_examples=200, deadline=None)
@given(field_triples())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero()
    if a != F.zero():
        assert a * a.inverse() == F.one()
        assert b / a * a == b


@settings(max_examples=200, deadline=None)
@given(field_triples())
def test_frobenius_is_a_field_automorphism(data):
    F, (a, b, _) = data
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius(a, F.k) == a
