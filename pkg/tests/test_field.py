import itertools

import numpy as np
import pytest

from lingrowth.errors import DegreeMismatch, NotPrime, ReducibleModulus, UsageError, ZeroInverse
from lingrowth.field import (
    FieldElem,
    is_irreducible,
    is_prime,
    make_field,
    parse_field,
    prime_power,
    smallest_irreducible,
)
from oracles import OracleField, poly_is_irreducible

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (2, 5), (2, 6), (3, 3), (7, 2)]


def test_make_ctx_examples():
    F = make_field(5, 1)
    assert F.q == 5 and F.modulus == (0, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)
    F9 = make_field(3, 2, (1, 0, 1))
    assert F9.q == 9


def test_construction_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(ReducibleModulus):
        make_field(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(DegreeMismatch):
        make_field(3, 2, (1, 1))
    with pytest.raises(DegreeMismatch):
        make_field(3, 2, (1, 0, 2))  # not monic
    with pytest.raises(UsageError):
        make_field(2, 17)
    with pytest.raises(UsageError):
        parse_field("GF(6)")
    with pytest.raises(UsageError):
        parse_field("F(7)")


def test_parse_field():
    assert parse_field("GF(9)") == parse_field("GF(3^2)") == make_field(3, 2)
    assert parse_field("gf(7)").q == 7


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_smallest_irreducible_against_brute_force(p, e):
    mod = smallest_irreducible(p, e)
    assert poly_is_irreducible(mod, p)
    # every monic polynomial that sorts earlier (constant term compared first) is reducible
    for coeffs in itertools.product(range(p), repeat=e):
        cand = tuple(coeffs) + (1,)
        if cand == mod:
            break
        assert not poly_is_irreducible(cand, p)


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_tables_match_polynomial_oracle(p, e):
    F = make_field(p, e)
    O = OracleField(p, F.modulus)
    add, mul = O.tables()
    x = np.arange(F.q)
    assert np.array_equal(F.vadd(x[:, None], x[None, :]), add)
    assert np.array_equal(F.vmul(x[:, None], x[None, :]), mul)


def test_scalar_examples():
    F5 = make_field(5)
    assert F5.mul(3, 4) == 2
    F4 = make_field(2, 2)
    x = 2  # the polynomial x
    assert F4.mul(x, x) == 3  # x + 1
    F7 = make_field(7)
    assert F7.inv(3) == 5 and F7.inv(1) == 1
    F9 = make_field(3, 2, (1, 0, 1))
    assert F9.inv(3) == 6  # inv(x) = 2x
    for F in (F5, F4, F7, F9):
        assert all(F.mul(a, 1) == a for a in range(F.q))


def test_zero_inverse():
    with pytest.raises(ZeroInverse):
        make_field(7).inv(0)
    with pytest.raises(ZeroDivisionError):
        make_field(2, 3).div(1, 0)


def test_enumerate():
    assert list(make_field(2).elements()) == [0, 1]
    assert len(list(make_field(2, 2).elements())) == 4
    F9 = make_field(3, 2)
    els = list(F9.elements())
    assert els == sorted(els) and len(set(els)) == 9
    assert {F9.mul(a, b) for a in els for b in els} <= set(els)


@pytest.mark.parametrize("p,e", [pe for pe in SMALL_FIELDS if pe[0] ** pe[1] <= 64])
def test_axioms_exhaustive(p, e):
    F = make_field(p, e)
    q = F.q
    a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    assert np.array_equal(F.vadd(F.vadd(a, b), c), F.vadd(a, F.vadd(b, c)))
    assert np.array_equal(F.vmul(a, F.vadd(b, c)), F.vadd(F.vmul(a, b), F.vmul(a, c)))
    assert all(F.power(x, q - 1) == 1 for x in range(1, q))
    frob = np.array([F.power(x, p) for x in range(q)])
    A, B = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    assert np.array_equal(frob[F.vadd(A, B)], F.vadd(frob[A], frob[B]))


def test_primitive_element_and_roots_of_unity():
    F = make_field(2, 4)
    g = F.primitive_element
    powers = {F.power(g, k) for k in range(F.q - 1)}
    assert powers == set(range(1, F.q))
    assert sorted(make_field(7).roots_of_unity(3)) == [1, 2, 4]
    assert make_field(5).roots_of_unity(2) == sorted(make_field(5).roots_of_unity(2))


def test_field_elem_operators():
    F = make_field(3, 2)
    a, b = F(4), F(5)
    assert isinstance(a, FieldElem)
    assert (a + b).value == F.add(4, 5)
    assert (a * b).value == F.mul(4, 5)
    assert (a / b * b) == a
    assert (a - a).value == 0
    assert (a**8).value == 1
    assert (-a + a).value == 0
    with pytest.raises(UsageError):
        FieldElem(F, 9)


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power(81) == (3, 4)
    with pytest.raises(UsageError):
        prime_power(12)
    assert is_irreducible((1, 1, 1), 2) and not is_irreducible((1, 0, 1), 2)
