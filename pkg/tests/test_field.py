import random

import pytest
from hypothesis import given, strategies as st

from corelab.field import (
    GF2_REDUCTION_POLYS, FieldDescriptor, FieldElement, FieldError, gf2_is_irreducible,
    gf2_is_irreducible_bruteforce, is_prime,
)


def test_primality():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(32003) and not is_prime(32001)
    assert is_prime(2**31 - 1)


def test_descriptor_rejects_bad_input():
    with pytest.raises(FieldError):
        FieldDescriptor.prime(32001)
    with pytest.raises(FieldError):
        FieldDescriptor.gf2(0)
    with pytest.raises(FieldError):
        FieldDescriptor.gf2(33)


@pytest.mark.parametrize("k", range(1, 33))
def test_reduction_table_irreducible_and_least(k):
    poly = GF2_REDUCTION_POLYS[k]
    assert poly.bit_length() == k + 1
    assert gf2_is_irreducible(poly)
    assert gf2_is_irreducible_bruteforce(poly)
    # lexicographically least: no smaller monic degree-k polynomial is irreducible
    check = gf2_is_irreducible_bruteforce if k <= 12 else gf2_is_irreducible
    assert not any(check(q) for q in range(1 << k, poly))


@pytest.mark.parametrize("k", range(1, 17))
def test_rabin_agrees_with_trial_division(k):
    rng = random.Random(k)
    for _ in range(20):
        q = (1 << k) | rng.getrandbits(k)
        assert gf2_is_irreducible(q) == gf2_is_irreducible_bruteforce(q)


def test_characteristic_and_order():
    assert FieldDescriptor.prime(7).characteristic == 7
    F = FieldDescriptor.gf2(16)
    assert F.characteristic == 2 and F.order == 65536 and F.modulus == 0x1002B
    assert F.directive() == "field gf2 k=16"
    assert FieldDescriptor.prime(32003).directive() == "field p=32003"


def test_gf256_exhaustive_inverse_and_frobenius():
    F = FieldDescriptor.gf2(8)
    images = set()
    for e in F.elements():
        if e:
            assert F.mul(e, F.inv(e)) == 1
        images.add(F.frobenius(e))
    assert images == set(F.elements())


def test_prime_field_exhaustive():
    F = FieldDescriptor.prime(101)
    assert all(F.mul(e, F.inv(e)) == 1 for e in range(1, 101))
    assert sorted(F.frobenius(e) for e in F.elements()) == list(range(101))


def test_table_and_carryless_paths_agree():
    small, big = FieldDescriptor.gf2(20), FieldDescriptor.gf2(20)
    rng = random.Random(3)
    from corelab.field import _clmul_mod
    for _ in range(200):
        a, b = rng.getrandbits(20), rng.getrandbits(20)
        assert small.mul(a, b) == _clmul_mod(a, b, big.modulus, 20)


def test_large_extension_without_tables():
    F = FieldDescriptor.gf2(32)
    rng = random.Random(5)
    for _ in range(50):
        a = rng.getrandbits(32) or 1
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, (1 << 32) - 1) == 1


@given(st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
def test_gf2_16_ring_axioms(a, b, c):
    F = FieldDescriptor.gf2(16)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, a) == 0


@given(st.integers(), st.integers(1, 32002))
def test_prime_field_elements(n, d):
    F = FieldDescriptor.prime(32003)
    x, y = F.element(n), F.element(d)
    assert 0 <= x.value < 32003
    assert (x / y) * y == x
    assert x - x == 0 and -x + x == 0


def test_element_wrapper():
    F = FieldDescriptor.gf2(4)
    a = FieldElement(F, 0b0110)
    assert a * a.inverse() == 1
    assert a.frobenius() == a * a
    assert a + a == 0
    assert F.format(a.value) == "[6]"
    with pytest.raises(FieldError):
        FieldElement(F, 16)
    with pytest.raises(FieldError):
        a + FieldElement(FieldDescriptor.gf2(5), 1)
