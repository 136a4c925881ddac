from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from moritakit import linalg
from moritakit.algebras import (bimodule_iso, field_algebra, matrix_algebra, regular_bimodule,
                                scalar_algebra)
from moritakit.azumaya import is_azumaya
from moritakit.galois import (ExtensionMismatch, GaloisModule, IndexOutOfRange, LModule, cor_algebra,
                              cor_bimodule, cor_category, cor_dimension_iso, cor_map, cor_module, cor_monoidal,
                              cor_space, cor_tensor_compatibility, dimension_iso_equivariance, fixed_points,
                              random_galois_module, speiser_check, twist)
from moritakit.generators import interval
from moritakit.lincat import validate_category
from moritakit.samples import corner_bimodule
from moritakit.scalars import GF4, GF9, QI, gf

EXTS = {"GF4": GF4(), "GF9": GF9(), "QI": QI()}


@pytest.fixture(params=sorted(EXTS))
def ext(request):
    return EXTS[request.param]


def test_twist_composes(ext):
    V = LModule(ext, 2)
    assert twist(V, 0) == V
    for s in range(ext.order):
        for t in range(ext.order):
            assert twist(twist(V, t), s).twist_index == ext.mul_table[s][t]
    with pytest.raises(IndexOutOfRange):
        twist(V, ext.order)


def test_twisted_scalars_act_through_inverse(ext):
    L = ext.field
    x = L.random(random.Random(0))
    W = twist(LModule(ext, 1), 1)
    assert W.scalar_matrix(x) == LModule(ext, 1).scalar_matrix(ext.apply(ext.inverse[1], x))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_fixed_points_of_standard_module(ext, m):
    W = GaloisModule.standard(ext, m)
    assert W.validate() == []
    assert len(fixed_points(W)) == m
    assert speiser_check(W)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3), st.sampled_from(sorted(EXTS)))
def test_descent_for_random_modules(seed, dim, name):
    W = random_galois_module(EXTS[name], dim, random.Random(seed))
    assert W.validate() == []
    check = speiser_check(W)
    assert check and check.fixed_dim == dim


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_cor_dimension(ext, m):
    assert cor_space(ext, m).dim == m ** ext.order
    assert cor_module(LModule(ext, m)).dim == m ** ext.order


def test_dimension_iso(ext):
    for m in (1, 2, 3):
        iso = cor_dimension_iso(ext, 1, m)
        assert iso.bijective
        assert dimension_iso_equivariance(ext, 1, m, iso)


def _random_l_matrix(L, rng, r, c):
    return [[L.random(rng) for _ in range(c)] for _ in range(r)]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_cor_is_functorial(seed):
    ext = GF4()
    L, K = ext.field, ext.base
    rng = random.Random(seed)
    A, B = _random_l_matrix(L, rng, 2, 2), _random_l_matrix(L, rng, 2, 1)
    assert cor_map(ext, linalg.mat_mul(L, A, B)) == linalg.mat_mul(K, cor_map(ext, A), cor_map(ext, B))
    assert cor_map(ext, linalg.identity(L, 2)) == linalg.identity(K, cor_space(ext, 2).dim)


@pytest.mark.parametrize("a,b", [(1, 1), (1, 3), (2, 2), (2, 3)])
def test_monoidal_map_is_bijective(ext, a, b):
    M = cor_monoidal(ext, a, b)
    n = (a * b) ** ext.order
    assert len(M) == n and linalg.rank(ext.base, M, n) == n


def test_monoidal_requires_one_extension():
    with pytest.raises(ExtensionMismatch):
        cor_monoidal(GF4(), 1, 1, other=GF9())


def test_cor_of_top_field_is_base_field(ext):
    C = cor_algebra(scalar_algebra(ext.field), ext)
    assert C.dim == 1 and C.unit == [ext.base.one()]


def test_cor_of_matrix_algebra_is_azumaya():
    E = GF4()
    C = cor_algebra(matrix_algebra(E.field, 2), E)
    assert C.dim == 16 and is_azumaya(C)


def test_cor_algebra_field_mismatch():
    with pytest.raises(ExtensionMismatch):
        cor_algebra(matrix_algebra(gf(2), 2), GF4())
    with pytest.raises(ExtensionMismatch):
        cor_category(interval(gf(3)), GF4())


def test_cor_of_sum_is_sum_of_products():
    E = GF4()
    reg = regular_bimodule(scalar_algebra(E.field))
    two = cor_bimodule(reg.direct_sum(reg), E)
    # Cor(S + S) = Cor(S)^{+4} when |G| = 2
    base = regular_bimodule(two.R)
    assert two.dim == 4
    assert bimodule_iso(two, base.power(4))


def test_cor_category_matches_cor_algebra():
    E = GF4()
    S = matrix_algebra(E.field, 2)
    C = cor_category(S.as_category(), E)
    A = cor_algebra(S, E)
    (o,) = C.objects
    assert C.dim(o, o) == A.dim
    # composition g o f is the product g * f
    assert C.comp[(o, o, o)] == A.mult


def test_cor_category_with_line_homs(ext):
    A = interval(ext.field)
    C = cor_category(A, ext)
    assert validate_category(C) == []
    assert all(C.dim(x, y) == 1 for x in C.objects for y in C.objects)


def test_tensor_compatibility_for_corners():
    E = GF4()
    M, N = corner_bimodule(E.field, 2)
    assert cor_tensor_compatibility(M, N, E)
    assert cor_tensor_compatibility(N, M, E)


def test_field_algebra_over_base():
    A = field_algebra(GF9())
    assert A.dim == 2 and A.is_commutative()


def test_cor_of_dual_numbers_is_not_azumaya():
    from moritakit.algebras import truncated_polynomial
    E = GF4()
    C = cor_algebra(truncated_polynomial(E.field, 2), E)
    assert C.dim == 4 and not is_azumaya(C)


def test_monoidal_unit_and_trivial_dimension_iso(ext):
    K = ext.base
    assert cor_monoidal(ext, 1, 1) == [[K.one()]]
    iso = cor_dimension_iso(ext, 1, 1)
    assert iso.matrix == [[K.one()]]
