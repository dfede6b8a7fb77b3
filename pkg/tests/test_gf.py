import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from magicplanes import gf

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def test_prime_field_has_modulus_x():
    spec = gf.make_field(2, 1)
    assert spec.modulus == (0, 1)
    assert spec.q == 2


def test_gf4_modulus_gives_alpha_squared_alpha_plus_one():
    spec = gf.make_field(2, 2)
    assert spec.modulus == (1, 1, 1)
    alpha = spec.element([0, 1])
    assert alpha * alpha == spec.element([1, 1])


def test_gf9_modulus_is_smallest_irreducible_by_brute_force():
    # monic quadratics over Z/3 without roots, in low-to-high lexicographic order
    roots_free = [(c0, c1, 1) for c0, c1 in itertools.product(range(3), repeat=2)
                  if all((c0 + c1 * t + t * t) % 3 for t in range(3))]
    assert gf.make_field(3, 2).modulus == roots_free[0]


def test_make_field_is_deterministic():
    assert gf.make_field(2, 3) == gf.make_field(2, 3)


@pytest.mark.parametrize("p,k", [(4, 1), (1, 1), (2, 0), (2, 6), (33, 1)])
def test_make_field_rejects(p, k):
    with pytest.raises(gf.FieldError):
        gf.make_field(p, k)


def test_size_bound_is_configurable():
    assert gf.make_field(2, 6, max_order=64).q == 64


def test_gf2_one_plus_one():
    spec = gf.make_field(2)
    assert (spec.one() + spec.one()).is_zero()


def test_gf5_inverse_of_two():
    spec = gf.make_field(5)
    assert gf.inv(spec.element(2)) == spec.element(3)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        gf.inv(gf.make_field(3).zero())


def test_mixing_fields_is_an_error():
    a = gf.make_field(2).one()
    b = gf.make_field(3).one()
    with pytest.raises(gf.FieldError):
        gf.add(a, b)
    with pytest.raises(gf.FieldError):
        gf.mul(a, b)


def test_enumeration_orders():
    assert [e.index for e in gf.enumerate_elements(gf.make_field(2))] == [0, 1]
    gf4 = gf.enumerate_elements(gf.make_field(2, 2))
    assert [gf.render(e) for e in gf4] == ["0", "1", "a", "a+1"]
    gf9 = gf.enumerate_elements(gf.make_field(3, 2))
    assert len(set(gf9)) == 9


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    spec = gf.field_of_order(q)
    els = gf.enumerate_elements(spec)
    zero, one = spec.zero(), spec.one()
    for a in els:
        assert a + zero == a and a * one == a
        assert (a + (-a)).is_zero()
        for b in els:
            assert a + b == b + a
            assert a * b == b * a
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("q", SMALL_Q)
def test_multiplicative_group_is_cyclic(q):
    spec = gf.field_of_order(q)
    nonzero = gf.enumerate_elements(spec)[1:]
    for a in nonzero:
        assert gf.power(a, q - 1) == spec.one()
        assert gf.inv(a) * a == spec.one()
    orders = []
    for a in nonzero:
        k = next(k for k in range(1, q) if gf.power(a, k) == spec.one())
        orders.append(k)
    assert max(orders) == q - 1


@pytest.mark.parametrize("q", SMALL_Q)
def test_frobenius_is_additive(q):
    spec = gf.field_of_order(q)
    p = spec.p
    els = gf.enumerate_elements(spec)
    for a in els:
        for b in els:
            assert gf.power(a + b, p) == gf.power(a, p) + gf.power(b, p)


def test_power_matches_repeated_multiplication():
    spec = gf.make_field(2, 3)
    a = spec.element(5)
    acc = spec.one()
    for e in range(20):
        assert gf.power(a, e) == acc
        acc = acc * a


@given(q=st.sampled_from([4, 8, 9, 16, 25, 27]), data=st.data())
def test_render_parse_roundtrip(q, data):
    spec = gf.field_of_order(q)
    i = data.draw(st.integers(0, q - 1))
    e = spec.element(i)
    assert gf.parse(spec, gf.render(e)) == e


def test_prime_power_detection():
    assert gf.prime_power(9) == (3, 2)
    assert gf.prime_power(6) is None
    assert gf.prime_power(1) is None
    with pytest.raises(gf.FieldError):
        gf.field_of_order(12)
