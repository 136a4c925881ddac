from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from moritakit import io
from moritakit.acceptance import corner_functor
from moritakit.algebras import hamilton_quaternions, matrix_algebra
from moritakit.envelopes import SatFunctor, additive_hull
from moritakit.lincat import validate_category, validate_functor
from moritakit.samples import (corner_bimodule, random_algebra, random_category, random_functor,
                               random_matrix_model, random_morita_equivalence)
from moritakit.morita import is_morita_equivalence
from moritakit.scalars import GF4, QI, QQ, gf

K2 = gf(2)


def _rt(obj):
    return json.loads(io.dumps(obj))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_category_round_trip(seed):
    A = random_category(K2, random.Random(seed), 2, 2)
    B = io.category_from_json(_rt(io.category_to_json(A)))
    assert io.dumps(io.category_to_json(B)) == io.dumps(io.category_to_json(A))


def test_materialized_category_keeps_its_objects():
    H = additive_hull(random_category(gf(3), random.Random(2), 2, 1), 2)
    B = io.category_from_json(_rt(io.category_to_json(H)))
    assert B.sat_objects == H.sat_objects
    assert validate_category(B) == []


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_functor_round_trip(seed):
    F = random_functor(K2, random.Random(seed), 2, 2)
    G = io.functor_from_json(_rt(io.functor_to_json(F)))
    assert validate_functor(G) == []
    # zero hom spaces carry no data and are not written
    assert {k: v for k, v in G.images.items() if v} == {k: v for k, v in F.images.items() if v}
    assert G.obj_map == F.obj_map


def test_sat_functor_round_trip():
    corner, _ = corner_functor(3, 2)
    S = SatFunctor.from_kfunctor(corner)
    T = io.functor_from_json(_rt(io.functor_to_json(S)))
    assert isinstance(T, SatFunctor) and T.validate() == []
    assert T.obj_map == S.obj_map


@pytest.mark.parametrize("A", [hamilton_quaternions(), matrix_algebra(GF4().field, 2)], ids=["H", "M2"])
def test_algebra_round_trip(A):
    B = io.algebra_from_json(_rt(io.algebra_to_json(A)))
    assert B.mult == A.mult and B.unit == A.unit and B.field == A.field


def test_bimodule_round_trip():
    M, _ = corner_bimodule(QQ, 2)
    N = io.bimodule_from_json(_rt(io.bimodule_to_json(M)))
    assert N.left == M.left and N.right == M.right and N.validate() == []


def test_extension_round_trip():
    E = QI()
    data = _rt(io.extension_to_json(E))
    assert io.detect(data) == "extension"
    assert io.extension_from_json(data).spec() == E.spec()


def test_detect_and_errors(tmp_path):
    assert io.detect({"objects": []}) == "category"
    assert io.detect({"mult": []}) == "algebra"
    assert io.detect({"objects": [], "arrows": {}}) == "presentation"
    with pytest.raises(io.FormatError):
        io.detect({"foo": 1})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(io.FormatError):
        io.load(bad)
    with pytest.raises(io.FormatError):
        io.ring_of({})


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": [1, 2]}) == io.dumps({"a": [1, 2], "b": 1})
    assert io.dumps({}).endswith("\n")


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_samples_are_valid(seed):
    rng = random.Random(seed)
    model, idems, gens = random_matrix_model(K2, rng)
    assert validate_category(model.category) == []
    assert random_algebra(K2, rng).validate() == []
    assert is_morita_equivalence(random_morita_equivalence(K2, rng))


def test_samples_are_reproducible():
    a = io.category_to_json(random_category(K2, random.Random(11), 2, 2))
    b = io.category_to_json(random_category(K2, random.Random(11), 2, 2))
    assert a == b
