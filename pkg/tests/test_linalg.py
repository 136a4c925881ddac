from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from moritakit import linalg
from moritakit.scalars import QQ, gf

K2, K3 = gf(2), gf(3)


def matrices(p, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)))


def brute_rank(p, M):
    """log_p of the size of the row space, by enumeration."""
    rows = [tuple(r) for r in M]
    span = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(len(rows[0])))
        span.add(v)
    n = len(span)
    k = 0
    while p ** k < n:
        k += 1
    return k


@settings(max_examples=80, deadline=None)
@given(matrices(3))
def test_rank_matches_enumeration(M):
    assert linalg.rank(K3, M) == brute_rank(3, M)


@settings(max_examples=80, deadline=None)
@given(matrices(2, 5, 5))
def test_nullspace_is_kernel_of_full_dimension(M):
    ncols = len(M[0])
    N = linalg.nullspace(K2, M, ncols)
    assert len(N) + linalg.rank(K2, M, ncols) == ncols
    for v in N:
        assert linalg.is_zero_vec(K2, linalg.mat_vec(K2, M, v))


@settings(max_examples=60, deadline=None)
@given(matrices(2, 4, 4))
def test_nullspace_pivot_convention(M):
    ncols = len(M[0])
    N = linalg.nullspace(K2, M, ncols)
    pivots = set(linalg.column_pivots(K2, M, ncols))
    free = [c for c in range(ncols) if c not in pivots]
    for v, f in zip(N, free):
        assert v[f] == 1
        assert all(v[g] == 0 for g in free if g != f)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4, 4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_solve_is_sound(M, x):
    ncols = len(M[0])
    b = linalg.mat_vec(K3, M, x[:ncols])
    sol = linalg.solve(K3, M, b, ncols)
    assert sol is not None
    assert linalg.mat_vec(K3, M, sol) == b


def test_inconsistent_system():
    assert linalg.solve(K2, [[1, 0], [1, 0]], [0, 1], 2) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)), min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_inverse_over_rationals(M):
    inv = linalg.inverse(QQ, M)
    if inv is None:
        assert linalg.rank(QQ, M, 3) < 3
    else:
        assert linalg.mat_mul(QQ, M, inv) == linalg.identity(QQ, 3)


def test_coordinates():
    vecs = [[1, 1, 0], [0, 1, 1]]
    C = linalg.Coordinates(K2, vecs, 3)
    assert C.coords([1, 0, 1]) == [1, 1]
    assert not C.contains([1, 0, 0])
    assert C.dim == 2


def test_kron_dimensions():
    A = [[Fraction(1), Fraction(2)]]
    B = [[Fraction(0)], [Fraction(3)]]
    K = linalg.kron(QQ, A, B)
    assert K == [[0, 0], [3, 6]]
