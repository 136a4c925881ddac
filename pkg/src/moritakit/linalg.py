"""Exact dense linear algebra over a :class:`~moritakit.scalars.Field`.

Matrices are lists of rows. Over prime fields the row reduction runs in numpy
with int64 residues; everything else goes through the generic field API.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .scalars import Field, PrimeField


def identity(F: Field, n: int):
    z, o = F.zero(), F.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def zeros(F: Field, rows: int, cols: int):
    z = F.zero()
    return [[z] * cols for _ in range(rows)]


def unit_vector(F: Field, n: int, i: int):
    z = F.zero()
    v = [z] * n
    v[i] = F.one()
    return v


def transpose(M, ncols: int | None = None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def mat_mul(F: Field, A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    z = F.zero()
    out = []
    for row in A:
        acc = [z] * ncols
        for k in range(inner):
            a = row[k]
            if F.is_zero(a):
                continue
            Bk = B[k]
            for j in range(ncols):
                b = Bk[j]
                if not F.is_zero(b):
                    acc[j] = F.add(acc[j], F.mul(a, b))
        out.append(acc)
    return out


def mat_vec(F: Field, A, v):
    z = F.zero()
    out = []
    for row in A:
        acc = z
        for a, x in zip(row, v):
            if not F.is_zero(a) and not F.is_zero(x):
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def mat_add(F: Field, A, B):
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(F: Field, A, B):
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def vec_add(F: Field, u, v):
    return [F.add(a, b) for a, b in zip(u, v)]


def vec_sub(F: Field, u, v):
    return [F.sub(a, b) for a, b in zip(u, v)]


def vec_scale(F: Field, c, v):
    return [F.mul(c, a) for a in v]


def is_zero_vec(F: Field, v) -> bool:
    return all(F.is_zero(a) for a in v)


def lincomb(F: Field, coeffs, vectors, length: int):
    """``sum_k coeffs[k] * vectors[k]`` (vectors of the given length)."""
    acc = [F.zero()] * length
    for c, v in zip(coeffs, vectors):
        if F.is_zero(c):
            continue
        for i, a in enumerate(v):
            if not F.is_zero(a):
                acc[i] = F.add(acc[i], F.mul(c, a))
    return acc


def kron(F: Field, A, B):
    out = []
    for ra in A:
        for rb in B:
            out.append([F.mul(a, b) for a in ra for b in rb])
    return out


def _rref_prime(M, ncols: int, p: int):
    A = np.array(M, dtype=np.int64).reshape(len(M), ncols) % p
    rows = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in A[:r]], pivots


def rref(F: Field, M, ncols: int | None = None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M or ncols == 0:
        return [], []
    if isinstance(F, PrimeField):
        return _rref_prime(M, ncols, F.p)
    A = [list(row) for row in M]
    rows = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if not F.is_zero(A[i][c])), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        piv = A[r]
        for i in range(rows):
            if i != r and not F.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) if not F.is_zero(y) else x
                        for x, y in zip(A[i], piv)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: Field, M, ncols: int | None = None) -> int:
    return len(rref(F, M, ncols)[1])


def nullspace(F: Field, M, ncols: int | None = None):
    """Basis of ``{x : M x = 0}``; one vector per free column, pivot convention."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, pivots = rref(F, M, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [F.zero()] * ncols
        v[f] = F.one()
        for row, pc in zip(R, pivots):
            if not F.is_zero(row[f]):
                v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def solve(F: Field, A, b, ncols: int | None = None):
    """One solution of ``A x = b`` (free variables set to 0), or None."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [F.zero()] * ncols
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero()] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def inverse(F: Field, A):
    n = len(A)
    if any(len(row) != n for row in A):
        return None
    if n == 0:
        return []
    aug = [list(row) + e for row, e in zip(A, identity(F, n))]
    R, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        return None
    return [row[n:] for row in R]


def column_pivots(F: Field, M, ncols: int | None = None):
    """Indices of a lexicographically first maximal independent set of columns."""
    return rref(F, M, ncols)[1]


def columns(M, idx: Sequence[int]):
    return [[row[i] for row in M] for i in idx]


class Coordinates:
    """Coordinates with respect to an independent list of vectors.

    Picks rows where the basis matrix is invertible, so coordinates of a vector
    known to lie in the span cost one small matrix-vector product.
    """

    def __init__(self, F: Field, vectors, length: int):
        self.F = F
        self.vectors = [list(v) for v in vectors]
        self.length = length
        self.dim = len(self.vectors)
        if self.dim == 0:
            self.rows, self.inv = [], []
            return
        _, rows = rref(F, self.vectors, length)
        if len(rows) != self.dim:
            raise ValueError("vectors are linearly dependent")
        self.rows = rows
        square = [[v[r] for v in self.vectors] for r in rows]
        self.inv = inverse(F, square)

    def coords(self, v, check: bool = False):
        c = mat_vec(self.F, self.inv, [v[r] for r in self.rows]) if self.dim else []
        if check and not self.contains(v, c):
            raise ValueError("vector is not in the span")
        return c

    def contains(self, v, c=None) -> bool:
        if c is None:
            c = self.coords(v)
        return lincomb(self.F, c, self.vectors, self.length) == list(v)

    def vector(self, c):
        return lincomb(self.F, c, self.vectors, self.length)


def span_basis(F: Field, vectors, length: int):
    """Row-reduced basis of the span (canonical)."""
    return rref(F, [list(v) for v in vectors], length)[0]
