from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from moritakit.acceptance import corner_functor
from moritakit.algebras import (bimodule_iso, check_bimodule_iso, matrix_algebra, product_algebra,
                                regular_bimodule)
from moritakit.envelopes import SatView
from moritakit.generators import (generator_R0, generator_R1, generator_S2, idempotent_monoid,
                                  retract_category, sum_category)
from moritakit.lincat import KFunctor, functor_iso_test, identity_functor, validate_functor
from moritakit.morita import (NotFinitelyGenerated, Pushout, additively_generates, bimodule_to_functor,
                              check_homotopy, check_mapping_cylinder, cylinder_object, functor_round_trip,
                              functor_to_bimodule,
                              ho_compose, ho_equal, ho_from_functor, ho_identity, ho_is_iso,
                              homotopy_from_iso, is_fully_faithful, is_morita_equivalence, iso_from_homotopy,
                              mapping_cylinder, retract_oracle, sample_cocone, saturation_witness_search,
                              verify_generation_witness)
from moritakit.samples import corner_bimodule, random_category, random_functor, random_images
from moritakit.scalars import QQ, gf

K2, K3 = gf(2), gf(3)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3)])
def test_corner_is_equivalence_and_unit_is_not(p, n):
    corner, unit = corner_functor(p, n)
    rep = is_morita_equivalence(corner)
    assert rep and rep.fully_faithful and rep.generation
    bad = is_morita_equivalence(unit)
    assert not bad and not bad.fully_faithful
    # End(K) is 1-dimensional while End(M_n) has dimension n^2
    assert bad.fully_faithful.violations


def test_generation_witnesses_verify():
    corner, _ = corner_functor(2, 2)
    rep = is_morita_equivalence(corner)
    V = SatView(corner.tgt)
    for y, wit in rep.generation.witnesses.items():
        assert verify_generation_witness(V, y, wit)


@pytest.mark.parametrize("make", [generator_R0, generator_R1, generator_S2])
def test_generating_functors_are_equivalences(make):
    F = make(K2)
    assert validate_functor(F) == []
    assert is_morita_equivalence(F)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_generation_agrees_with_retract_oracle(seed):
    rng = random.Random(seed)
    A = random_category(K2, rng, 2, 2)
    V = SatView(A)
    images = random_images(V, rng)
    assert bool(additively_generates(images, V)) == retract_oracle(images, V, max_len=3)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_mapping_cylinder_factorizes(seed):
    F = random_functor(K2, random.Random(seed), 3, 2)
    M = mapping_cylinder(F)
    checks = check_mapping_cylinder(F, M)
    assert checks and checks.factorization and checks.q_fully_faithful


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_pushout_mediator_is_unique(seed):
    rng = random.Random(seed)
    F = random_functor(K2, rng, 2, 2)
    P = Pushout(F)
    T0, T1 = sample_cocone(P, rng)
    T = P.mediator(T0, T1)
    assert P.check_cocone(T0, T1) and P.mediator_commutes(T, T0, T1)
    rk, unknowns = P.uniqueness_rank(T0, T1)
    assert rk == unknowns


def _inner(R, u, u_inv):
    Rc = R.as_category()
    (o,) = Rc.objects
    return KFunctor(Rc, Rc, {o: o}, {(o, o): [R.mul(R.mul(u, a), u_inv) for a in R.basis()]}, name="conj")


def test_homotopy_round_trip():
    R = matrix_algebra(QQ, 2)
    one, m1, z = QQ.one(), QQ.from_int(-1), QQ.zero()
    conj = _inner(R, [one, one, z, one], [one, m1, z, one])
    ident = identity_functor(conj.src)
    eta = functor_iso_test(ident, conj).witness
    H = homotopy_from_iso(eta)
    cyl = cylinder_object(conj.src)
    assert check_homotopy(H, cyl, ident, conj)
    back = iso_from_homotopy(H, conj.src, ident, conj)
    assert back.verify() and back.verify_invertible()
    assert back.components == eta.components


def test_saturation_search_on_retract_generator():
    R = retract_category(K2)
    rep = saturation_witness_search(R)
    assert rep.zero_object is None and rep.exhaustive
    found = {tuple(e): w for x, e, w in rep.splittings if x == "o"}
    # ip splits through r, its complement 1 - ip has no image among the objects
    assert sum(w is not None for w in found.values()) == 1
    assert sum(w is None for w in found.values()) == 1


def test_saturation_search_finds_sums():
    S = sum_category(K2)
    rep = saturation_witness_search(S, pairs=[("o1", "o2")])
    ((x, y, wit),) = rep.direct_sums
    assert wit is not None and wit["object"] == "s"
    assert all(w is not None for *_, w in rep.splittings)


def test_idempotent_monoid_has_no_witnesses():
    rep = saturation_witness_search(idempotent_monoid(K3))
    assert rep.splittings and all(w is None for *_, w in rep.splittings)


def test_homotopy_category_maps():
    corner, _ = corner_functor(2, 2)
    phi = ho_from_functor(corner)
    assert ho_is_iso(phi)
    composed = ho_compose(ho_identity(phi.tgt), phi)
    assert ho_equal(composed, phi)
    assert not ho_is_iso(ho_from_functor(corner_functor(2, 2)[1]))


def test_fully_faithful_identity():
    A = random_category(K3, random.Random(7), 2, 2)
    assert is_fully_faithful(identity_functor(A))


@pytest.mark.parametrize("make", [lambda: regular_bimodule(matrix_algebra(K2, 2)),
                                  lambda: corner_bimodule(K3, 2)[0],
                                  lambda: corner_bimodule(K3, 2)[1],
                                  lambda: regular_bimodule(product_algebra(K3, 2)).power(2)])
def test_bimodule_round_trip(make):
    M = make()
    data = bimodule_to_functor(M)
    assert data.functor.validate() == []
    back = functor_to_bimodule(data.functor)
    iso = bimodule_iso(M, back)
    assert iso and check_bimodule_iso(M, back, iso.matrix)
    eta = functor_round_trip(data.functor)
    assert eta and eta.witness.verify() and eta.witness.verify_invertible()


def test_bimodule_generators_must_generate():
    M = regular_bimodule(product_algebra(K2, 2))
    with pytest.raises(NotFinitelyGenerated):
        bimodule_to_functor(M, generators=[[0, 1]])


def test_structured_sums_over_rationals():
    from moritakit.envelopes import additive_hull
    H = additive_hull(retract_category(QQ), 2)
    rep = saturation_witness_search(H, pairs=[("o", "r"), ("o", "[]"), ("o", "[o,r]")])
    found = {(x, y): w for x, y, w in rep.direct_sums}
    assert found[("o", "r")]["object"] == "[o,r]"
    assert found[("o", "[]")]["object"] == "o"
    assert found[("o", "[o,r]")] is None
    assert not rep.exhaustive
