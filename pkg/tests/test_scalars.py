from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from moritakit import linalg
from moritakit.scalars import (GF4, GF9, QI, QQ, DivisionByZero, GaloisExtension, InvalidRing, RingMismatch,
                               Scalar, field_from_spec, gf, quadratic_extension)

FIELDS = [QQ, gf(2), gf(5), gf(2, 2, [1, 1, 1]), gf(3, 2, [1, 0, 1]), gf(2, 3, [1, 1, 0, 1])]


def elements(F):
    if F.is_finite():
        return st.sampled_from(list(F.elements()))
    return st.builds(Fraction, st.integers(-10**4, 10**4), st.integers(1, 50))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms(F):
    @settings(max_examples=60, deadline=None)
    @given(elements(F), elements(F), elements(F))
    def check(a, b, c):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(a, F.neg(a)) == F.zero()
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one()

    check()


def test_small_examples():
    K2 = gf(2)
    assert K2.add(1, 1) == 0
    assert QQ.mul(Fraction(2, 3), Fraction(3, 4)) == Fraction(1, 2)
    L = gf(2, 2, [1, 1, 1])
    t = (0, 1)
    assert L.mul(t, t) == (1, 1)


def test_rationals_stay_reduced():
    x = QQ.add(Fraction(1, 6), Fraction(1, 3))
    assert (x.numerator, x.denominator) == (1, 2)
    assert QQ.encode(Fraction(-4, 6)) == "-2/3"


def test_division_by_zero_and_mismatch():
    with pytest.raises(DivisionByZero):
        gf(3).inv(0)
    with pytest.raises(DivisionByZero):
        QQ.inv(Fraction(0))
    with pytest.raises(RingMismatch):
        Scalar(gf(2), 1) + Scalar(gf(3), 1)


def test_invalid_rings():
    with pytest.raises(InvalidRing):
        gf(4)
    with pytest.raises(InvalidRing):
        gf(2, 2, [1, 0, 1])  # t^2 + 1 = (t + 1)^2 over GF(2)


def test_scalar_wrapper():
    a = Scalar(gf(7), 3)
    assert a * a.inv() == 1
    assert (a + 4) == 0
    assert -a == Scalar(gf(7), 4)


@pytest.mark.parametrize("make", [GF4, GF9, QI, lambda: quadratic_extension(2)])
def test_extensions_are_galois(make):
    E = make()
    assert E.validate() == []
    assert E.order == E.n
    K = E.base
    # the whole group fixes exactly K . 1
    I = linalg.identity(K, E.n)
    rows = [r for g in E.group[1:] for r in linalg.mat_sub(K, g, I)]
    assert len(linalg.nullspace(K, rows, E.n)) == 1


def test_automorphism_examples():
    E = GF4()
    assert E.apply(1, (0, 1)) == (1, 1)
    E = QI()
    assert E.apply(1, (Fraction(0), Fraction(1))) == (0, -1)
    assert E.apply(0, (Fraction(3), Fraction(5))) == (3, 5)
    with pytest.raises(IndexError):
        E.apply(2, (Fraction(1), Fraction(0)))


@pytest.mark.parametrize("make", [GF4, GF9])
def test_frobenius_generates(make):
    E = make()
    L = E.field
    p = E.base.p
    rng = random.Random(0)
    for _ in range(10):
        x = L.random(rng)
        assert E.apply(1, x) == L.power(x, p)
    seen = {0}
    s = 1
    while s not in seen:
        seen.add(s)
        s = E.mul_table[1][s]
    assert len(seen) == E.order


@pytest.mark.parametrize("make", [GF4, GF9, QI])
def test_automorphisms_are_multiplicative(make):
    E = make()
    L = E.field
    rng = random.Random(1)
    for s in range(E.order):
        assert E.apply(s, L.one()) == L.one()
        for _ in range(5):
            a, b = L.random(rng), L.random(rng)
            assert E.apply(s, L.mul(a, b)) == L.mul(E.apply(s, a), E.apply(s, b))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_description_round_trip(F):
    assert field_from_spec(F.spec()) == F
    rng = random.Random(2)
    x = F.random(rng)
    assert F.decode(F.encode(x)) == x


@pytest.mark.parametrize("make", [GF4, GF9, QI])
def test_extension_description_round_trip(make):
    E = make()
    E2 = GaloisExtension.from_spec(E.spec())
    assert E2.spec() == E.spec()
    assert E2.mul_table == E.mul_table
