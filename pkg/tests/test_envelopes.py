from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from moritakit import linalg
from moritakit.algebras import matrix_algebra
from moritakit.envelopes import (BoundMismatch, NotIdempotent, ObjectMismatch, SatFunctor, SatView,
                                 additive_hull, compose_sat, functor_plus, iota, karoubi, words)
from moritakit.generators import retract_category
from moritakit.lincat import validate_category, validate_functor
from moritakit.samples import random_category, random_functor
from moritakit.scalars import gf

K2, K3 = gf(2), gf(3)


def test_word_count():
    assert len(words(["a", "b"], 2)) == 1 + 2 + 4
    assert len(words(["a"], 3, include_zero=False)) == 3


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_hull_hom_dimensions_are_sums(seed):
    A = random_category(K2, random.Random(seed), 2, 2)
    H = additive_hull(A, 2)
    assert validate_category(H) == []
    for a, s in H.sat_objects.items():
        for b, t in H.sat_objects.items():
            expected = sum(A.dim(x, y) for x in s.word for y in t.word)
            assert H.dim(a, b) == expected


def test_zero_object_has_no_morphisms():
    A = retract_category(K2)
    H = additive_hull(A, 1)
    zero = next(n for n, s in H.sat_objects.items() if s.word == ())
    assert all(H.dim(zero, b) == 0 and H.dim(b, zero) == 0 for b in H.objects)


def test_karoubi_corner_of_matrix_algebra():
    A = matrix_algebra(K3, 2)
    Ac = A.as_category()
    (o,) = Ac.objects
    e11 = A.basis()[0]
    Kar = karoubi(Ac, [(o, e11)])
    assert validate_category(Kar) == []
    (corner,) = [n for n in Kar.objects if n != o]
    assert Kar.dim(corner, corner) == 1
    assert Kar.dim(corner, o) == 2 and Kar.dim(o, corner) == 2
    assert Kar.dim(o, o) == 4


def test_karoubi_rejects_non_idempotents():
    A = matrix_algebra(K3, 2)
    Ac = A.as_category()
    (o,) = Ac.objects
    with pytest.raises(NotIdempotent):
        karoubi(Ac, [(o, [0, 1, 0, 0])])


def test_direct_sum_structure():
    A = random_category(K3, random.Random(1), 2, 2)
    V = SatView(A)
    x, y = V.base_object(A.objects[0]), V.base_object(A.objects[-1])
    s, incs, projs = V.direct_sum(x, y)
    total = [K3.zero()] * len(s.idem)
    for o, i, p in zip((x, y), incs, projs):
        assert V.hull_compose(p, i, o.word, s.word, o.word) == list(o.idem)
        total = linalg.vec_add(K3, total, V.hull_compose(i, p, s.word, o.word, s.word))
    assert total == list(s.idem)


def test_split_idempotent():
    A = matrix_algebra(K3, 2)
    V = SatView(A.as_category())
    (o,) = A.as_category().objects
    x = V.base_object(o)
    (im, i1, p1), (co, i2, p2) = V.split(x, A.basis()[0])
    assert V.dim(im, im) == 1 and V.dim(co, co) == 1
    assert V.dim(im, co) == 1
    with pytest.raises(NotIdempotent):
        V.split(x, [0, 1, 0, 0])


def test_view_errors():
    V = SatView(retract_category(K2))
    with pytest.raises(ObjectMismatch):
        V.obj(("nope",))
    with pytest.raises(ObjectMismatch):
        V.obj(("o",), (1,))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_functor_plus_is_a_functor(seed):
    F = random_functor(K2, random.Random(seed), 2, 1)
    Fp = functor_plus(F, 2)
    assert validate_functor(Fp) == []


def test_functor_plus_bound_mismatch():
    F = random_functor(K2, random.Random(0), 2, 1)
    with pytest.raises(BoundMismatch):
        functor_plus(F, 2, 3)


def test_iota_is_fully_faithful_embedding():
    A = retract_category(K3)
    G = iota(A)
    assert G.validate() == []
    Gk = G.as_kfunctor()
    for x in A.objects:
        for y in A.objects:
            assert Gk.tgt.dim(Gk(x), Gk(y)) == A.dim(x, y)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_extension_of_iota_fixes_functors(seed):
    F = random_functor(K2, random.Random(seed), 2, 2)
    G = SatFunctor.from_kfunctor(F)
    H = compose_sat(iota(F.tgt, G.view), G)
    assert all(H(x) == G(x) for x in F.src.objects)
    assert H.images == {k: [list(v) for v in vs] for k, vs in G.images.items()}
