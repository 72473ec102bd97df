from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lienil.coeff import (
    GF, QQ, ZZ, ZZ3, NotInRing, NotInvertible, RingKind, RingMismatch, RingSpec, parse_ring, scalar_arith,
    scalar_invert, three_invertible,
)

from conftest import RINGS, rings, scalars


def test_arith_examples():
    assert scalar_arith("add", Fraction(1, 3), Fraction(2, 3), QQ) == 1
    assert scalar_arith("mul", 2, 2, GF(3)) == 1
    assert scalar_arith("add", Fraction(1, 3), Fraction(1, 9), ZZ3) == Fraction(4, 9)


def test_invert_examples():
    assert scalar_invert(ZZ3.coerce(3), ZZ3) == Fraction(1, 3)
    with pytest.raises(NotInvertible):
        scalar_invert(2, ZZ)
    with pytest.raises(NotInvertible):
        scalar_invert(3, ZZ)
    assert scalar_invert(2, GF(5)) == 3
    with pytest.raises(NotInvertible):
        scalar_invert(ZZ3.coerce(2), ZZ3)
    assert scalar_invert(ZZ3.coerce(Fraction(-1, 9)), ZZ3) == -9


def test_three_invertible():
    assert three_invertible(QQ) and three_invertible(ZZ3) and three_invertible(GF(5))
    assert not three_invertible(ZZ) and not three_invertible(GF(3))


def test_ring_validation():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        RingSpec(RingKind.RATIONALS, 5)
    assert parse_ring("Fp:7") == GF(7)
    assert parse_ring("Z3loc") == ZZ3
    with pytest.raises(ValueError):
        parse_ring("Fp:9")
    with pytest.raises(ValueError):
        parse_ring("R")


def test_coerce_rejects_out_of_ring():
    with pytest.raises(NotInRing):
        ZZ.coerce(Fraction(1, 2))
    with pytest.raises(NotInRing):
        ZZ3.coerce(Fraction(1, 2))
    with pytest.raises(NotInRing):
        GF(3).coerce(Fraction(1, 3))
    assert GF(5).coerce(Fraction(1, 2)) == 3
    assert QQ.coerce("-6/4") == Fraction(-3, 2)


def test_mismatch_detected():
    with pytest.raises(RingMismatch):
        ZZ.add(Fraction(1, 2), 1)
    with pytest.raises(RingMismatch):
        GF(5).mul(7, 1)


@given(st.data(), rings)
def test_ring_axioms(data, ring):
    a, b, c = (data.draw(scalars(ring)) for _ in range(3))
    add, mul = ring.add, ring.mul
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert ring.sub(add(a, b), b) == a
    for v in (add(a, b), mul(a, b), ring.neg(a)):
        assert ring.is_canonical(v)


@given(st.data(), rings)
def test_invert_roundtrip(data, ring):
    a = data.draw(scalars(ring))
    try:
        b = scalar_invert(a, ring)
    except NotInvertible:
        assert not ring.is_unit(a)
        return
    assert ring.mul(a, b) == ring.one


@given(st.data(), rings)
def test_canonicalization_idempotent(data, ring):
    a = data.draw(scalars(ring))
    assert ring.coerce(ring.coerce(a)) == ring.coerce(a)
    assert type(ring.coerce(a)) is type(a)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_loc3_numerator_reduced(ring):
    if ring.kind is RingKind.INTEGERS_LOC3:
        v = ring.coerce(Fraction(6, 9))
        assert v == Fraction(2, 3) and v.numerator % 3 != 0
