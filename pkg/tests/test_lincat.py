from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from moritakit.algebras import matrix_algebra, product_algebra
from moritakit.generators import bullet, interval, named, one_arrow, parallel_pair
from moritakit.lincat import (CategoryPresentation, InvalidCategory, InvalidPresentation, KFunctor,
                              compose_functors, free_kcategory, functor_iso_test, identity_functor,
                              is_isomorphism, nat_trans_space, opposite, scalar_extension,
                              scalar_extension_functor, tensor_product, validate_category, validate_functor)
from moritakit.samples import random_category, random_functor
from moritakit.scalars import GF4, QQ, RingMismatch, gf

K2, K3 = gf(2), gf(3)


def homs(A):
    return {(x, y): A.dim(x, y) for x in A.objects for y in A.objects}


@pytest.mark.parametrize("name", ["bullet", "arrow", "P", "I", "E1", "R1", "S2", "0"])
def test_named_categories_are_valid(name):
    assert validate_category(named(name, K3)) == []


def test_free_category_dimensions():
    assert one_arrow(K2).dim("0", "1") == 1
    assert one_arrow(K2).dim("1", "0") == 0
    assert parallel_pair(K2).dim("0", "1") == 2
    I = interval(K2)
    # 0 and 1 are isomorphic, every hom space is a line
    assert set(homs(I).values()) == {1}


def test_presentation_errors():
    bad = CategoryPresentation(["0"], {"a": ("0", "0")}, {}, {"0": "a"})
    assert bad.validate()
    with pytest.raises(InvalidPresentation):
        free_kcategory(bad, K2)


def test_tensor_with_unit_category():
    A = interval(K3)
    T = tensor_product(bullet(K3), A)
    assert validate_category(T) == []
    assert sorted(homs(T).values()) == sorted(homs(A).values())


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_tensor_dimensions_multiply(seed):
    rng = random.Random(seed)
    A, B = random_category(K2, rng, 2, 2), random_category(K2, rng, 2, 1)
    T = tensor_product(A, B)
    assert validate_category(T) == []
    assert sum(homs(T).values()) == sum(homs(A).values()) * sum(homs(B).values())


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_opposite_is_an_involution(seed):
    A = random_category(K2, random.Random(seed), 2, 2)
    Aop = opposite(A)
    assert validate_category(Aop) == []
    B = opposite(Aop)
    assert homs(B) == homs(A)
    for x, y, z in itertools.product(A.objects, repeat=3):
        for f in A.basis(x, y):
            for g in A.basis(y, z):
                assert A.compose(g, f, x, y, z) == B.compose(g, f, x, y, z)
                assert Aop.compose(f, g, z, y, x) == A.compose(g, f, x, y, z)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_random_functors_are_functors(seed):
    F = random_functor(K2, random.Random(seed), 3, 2)
    assert validate_functor(F) == []
    G = compose_functors(identity_functor(F.tgt), F)
    assert G.images == F.images


def test_identity_natural_transformations_are_the_centre():
    A = matrix_algebra(K3, 2).as_category()
    space = nat_trans_space(identity_functor(A), identity_functor(A))
    assert len(space) == 1
    B = product_algebra(K3, 2).as_category()
    assert len(nat_trans_space(identity_functor(B), identity_functor(B))) == 2


def _algebra_functor(R, phi, name):
    Rc = R.as_category()
    (o,) = Rc.objects
    return KFunctor(Rc, Rc, {o: o}, {(o, o): [phi(b) for b in R.basis()]}, name=name)


def test_inner_automorphism_is_isomorphic_to_identity():
    R = matrix_algebra(QQ, 2)
    u = [QQ.one(), QQ.one(), QQ.zero(), QQ.one()]    # [[1, 1], [0, 1]]
    u_inv = [QQ.one(), QQ.from_int(-1), QQ.zero(), QQ.one()]
    conj = _algebra_functor(R, lambda a: R.mul(R.mul(u, a), u_inv), "conj")
    assert validate_functor(conj) == []
    res = functor_iso_test(identity_functor(conj.src), conj)
    assert res and res.witness.verify() and res.witness.verify_invertible()


def test_swap_is_not_isomorphic_to_identity():
    R = product_algebra(K2, 2)
    swap = _algebra_functor(R, lambda a: [a[1], a[0]], "swap")
    assert validate_functor(swap) == []
    res = functor_iso_test(identity_functor(swap.src), swap)
    assert not res and res.conclusive and res.status == "none"


def test_is_isomorphism():
    A = interval(K2)
    assert is_isomorphism(identity_functor(A))


def test_scalar_extension_preserves_structure():
    E = GF4()
    A = random_category(K2, random.Random(3), 2, 2)
    AL = scalar_extension(A, E)
    assert AL.field == E.field
    assert homs(AL) == homs(A)
    assert validate_category(AL) == []
    F = random_functor(K2, random.Random(4), 2, 2)
    assert validate_functor(scalar_extension_functor(F, E)) == []
    with pytest.raises(RingMismatch):
        scalar_extension(random_category(K3, random.Random(0)), E)


def test_invalid_category_detected():
    A = random_category(K2, random.Random(5), 2, 2)
    x = A.objects[0]
    A.ident[x] = [K2.zero()] * A.dim(x, x)
    assert validate_category(A)


def test_nat_trans_needs_parallel_functors():
    F = identity_functor(interval(K2))
    G = identity_functor(one_arrow(K2))
    with pytest.raises(InvalidCategory):
        nat_trans_space(F, G)
