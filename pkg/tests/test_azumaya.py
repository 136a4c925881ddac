from __future__ import annotations

import pytest

from moritakit import linalg
from moritakit.algebras import (field_algebra, hamilton_quaternions, is_algebra_hom, matrix_algebra,
                                product_algebra, quaternion_algebra, truncated_polynomial)
from moritakit.azumaya import (NotAzumaya, associator_matrix, brauer_inv, brauer_mul, check_trivializing,
                               corner_dim, is_azumaya, morita_trivialize, quaternion_conjugation,
                               same_brauer_class, sandwich_is_homomorphism, sandwich_map, swap_matrix)
from moritakit.scalars import GF4, QQ, gf

K2, K3 = gf(2), gf(3)


@pytest.mark.parametrize("A,expected", [
    (matrix_algebra(K2, 2), True),
    (matrix_algebra(K3, 3), True),
    (hamilton_quaternions(), True),
    (product_algebra(K3, 2), False),
    (truncated_polynomial(K3, 2), False),
    (field_algebra(GF4()), False),
], ids=["M2", "M3", "H", "KxK", "dual", "GF4"])
def test_azumaya_by_sandwich_rank(A, expected):
    rep = is_azumaya(A)
    assert bool(rep) == expected
    assert (rep.rank == A.dim ** 2) == expected


def test_sandwich_is_an_algebra_map():
    assert sandwich_is_homomorphism(hamilton_quaternions())
    assert sandwich_is_homomorphism(matrix_algebra(K3, 2))


def test_brauer_arithmetic_requires_azumaya():
    with pytest.raises(NotAzumaya):
        brauer_mul(product_algebra(K2, 2), matrix_algebra(K2, 2))
    with pytest.raises(NotAzumaya):
        brauer_inv(truncated_polynomial(K2, 2))


def test_products_and_inverses_stay_azumaya():
    H = hamilton_quaternions()
    HH = brauer_mul(H, H)
    assert HH.dim == 16 and is_azumaya(HH)
    assert is_azumaya(brauer_inv(H))


def test_quaternion_conjugation_is_anti_automorphism():
    H = hamilton_quaternions()
    assert is_algebra_hom(H, H.opposite(), quaternion_conjugation(H))


def test_swap_and_associator_are_isomorphisms():
    A, B = matrix_algebra(K3, 2), product_algebra(K3, 2)
    assert is_algebra_hom(A.tensor(B), B.tensor(A), swap_matrix(A, B))
    C = truncated_polynomial(K3, 2)
    assert is_algebra_hom(A.tensor(B).tensor(C), A.tensor(B.tensor(C)), associator_matrix(A, B, C))


@pytest.mark.parametrize("n", [2, 3])
def test_matrix_algebras_trivialize(n):
    A = matrix_algebra(K2, n)
    t = morita_trivialize(A)
    assert t and check_trivializing(A, t.idempotent) and corner_dim(A, t.idempotent) == 1


def test_split_quaternions_trivialize():
    A = quaternion_algebra(QQ, QQ.one(), QQ.one())
    t = morita_trivialize(A)
    assert t and check_trivializing(A, t.idempotent)


def test_hamilton_search_is_unknown():
    t = morita_trivialize(hamilton_quaternions())
    assert not t and t.status == "unknown" and t.exhausted


def test_class_is_its_own_inverse():
    H = hamilton_quaternions()
    res = same_brauer_class(H, H)
    C = H.tensor(H.opposite())
    assert res and check_trivializing(C, res.idempotent)


def test_sandwich_shape():
    H = hamilton_quaternions()
    S = sandwich_map(H)
    assert len(S) == 16 and linalg.rank(QQ, S, 16) == 16
