"""Finite-dimensional associative algebras and bimodules by structure constants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .scalars import ExtensionField, Field, GaloisExtension, RingMismatch


class InvalidAlgebra(ValueError):
    pass


class InvalidBimodule(ValueError):
    pass


class Algebra:
    """``mult[i][j]`` is the coordinate vector of ``b_i * b_j``."""

    def __init__(self, field: Field, mult, unit, name: str = ""):
        self.field = field
        self.mult = [[list(v) for v in row] for row in mult]
        self.unit = list(unit)
        self.dim = len(self.unit)
        self.name = name
        self._terms = None

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, field={self.field!r})"

    def terms(self):
        if self._terms is None:
            F = self.field
            self._terms = [(i, j, k, c) for i, row in enumerate(self.mult) for j, v in enumerate(row)
                           for k, c in enumerate(v) if not F.is_zero(c)]
        return self._terms

    def mul(self, a, b):
        F = self.field
        out = [F.zero()] * self.dim
        for i, j, k, c in self.terms():
            if F.is_zero(a[i]) or F.is_zero(b[j]):
                continue
            out[k] = F.add(out[k], F.mul(F.mul(a[i], b[j]), c))
        return out

    def basis(self):
        return [linalg.unit_vector(self.field, self.dim, i) for i in range(self.dim)]

    def zero(self):
        return [self.field.zero()] * self.dim

    def left_matrix(self, a):
        """Matrix of ``x -> a x``."""
        return linalg.transpose([self.mul(a, e) for e in self.basis()], self.dim)

    def right_matrix(self, b):
        """Matrix of ``x -> x b``."""
        return linalg.transpose([self.mul(e, b) for e in self.basis()], self.dim)

    def validate(self) -> list[str]:
        d = self.dim
        if len(self.mult) != d or any(len(r) != d for r in self.mult) or \
                any(len(v) != d for r in self.mult for v in r):
            return ["multiplication table has wrong shape"]
        problems = []
        for e in self.basis():
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                problems.append("unit law fails")
                break
        B = self.basis()
        for i, j in itertools.product(range(d), repeat=2):
            ij = self.mult[i][j]
            for k in range(d):
                if self.mul(ij, B[k]) != self.mul(B[i], self.mult[j][k]):
                    problems.append(f"associativity fails at ({i},{j},{k})")
                    return problems
        return problems

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(self.dim))

    def opposite(self) -> "Algebra":
        d = self.dim
        return Algebra(self.field, [[self.mult[j][i] for j in range(d)] for i in range(d)], self.unit,
                       name=f"{self.name}^op")

    def tensor(self, other: "Algebra") -> "Algebra":
        """``A (x) B`` with basis ``a_i (x) b_j`` at index ``i * dim B + j``."""
        if self.field != other.field:
            raise RingMismatch(f"{self.field!r} vs {other.field!r}")
        F = self.field
        dA, dB = self.dim, other.dim
        n = dA * dB
        mult = [[[F.zero()] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, c in self.terms():
            for i2, j2, k2, c2 in other.terms():
                cell = mult[i * dB + i2][j * dB + j2]
                kk = k * dB + k2
                cell[kk] = F.add(cell[kk], F.mul(c, c2))
        unit = [F.mul(a, b) for a in self.unit for b in other.unit]
        return Algebra(F, mult, unit, name=f"{self.name}(x){other.name}")

    def as_category(self, obj: str = "•"):
        from .lincat import algebra_as_category
        return algebra_as_category(self, obj)

    def to_json(self) -> dict:
        from .io import algebra_to_json
        return algebra_to_json(self)

    def extend_scalars(self, embed, L: Field) -> "Algebra":
        return Algebra(L, [[[embed(c) for c in v] for v in row] for row in self.mult],
                       [embed(c) for c in self.unit], name=f"{self.name}_L")


def check_algebra(R: Algebra) -> Algebra:
    problems = R.validate()
    if problems:
        raise InvalidAlgebra("; ".join(problems))
    return R


def is_algebra_hom(A: Algebra, B: Algebra, M) -> bool:
    """``M`` (rows index B's basis) is unital and multiplicative on basis pairs."""
    F = A.field
    if linalg.mat_vec(F, M, A.unit) != B.unit:
        return False
    cols = linalg.transpose(M, A.dim) if M else [[] for _ in range(A.dim)]
    for i, j in itertools.product(range(A.dim), repeat=2):
        if linalg.mat_vec(F, M, A.mult[i][j]) != B.mul(cols[i], cols[j]):
            return False
    return True


# --- constructors -----------------------------------------------------------

def scalar_algebra(F: Field) -> Algebra:
    return Algebra(F, [[[F.one()]]], [F.one()], name="K")


def matrix_algebra(F: Field, n: int) -> Algebra:
    """``M_n(K)`` with matrix units ``e_ij`` at index ``i * n + j``."""
    d = n * n
    z, o = F.zero(), F.one()
    mult = [[[z] * d for _ in range(d)] for _ in range(d)]
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j == k:
            mult[i * n + j][k * n + l][i * n + l] = o
    unit = [o if i == j else z for i in range(n) for j in range(n)]
    return Algebra(F, mult, unit, name=f"M{n}")


def matrix_unit(F: Field, n: int, i: int, j: int):
    return linalg.unit_vector(F, n * n, i * n + j)


def quaternion_algebra(F: Field, a, b) -> Algebra:
    """``(a, b)_K``: basis 1, i, j, k with ``i^2 = a``, ``j^2 = b``, ``ij = k = -ji``."""
    a, b = (F.from_int(a) if isinstance(a, int) else a), (F.from_int(b) if isinstance(b, int) else b)
    z, o = F.zero(), F.one()
    ab = F.mul(a, b)
    # products of basis elements as (coefficient, index)
    table = {
        (0, 0): (o, 0), (0, 1): (o, 1), (0, 2): (o, 2), (0, 3): (o, 3),
        (1, 0): (o, 1), (1, 1): (a, 0), (1, 2): (o, 3), (1, 3): (a, 2),
        (2, 0): (o, 2), (2, 1): (F.neg(o), 3), (2, 2): (b, 0), (2, 3): (F.neg(b), 1),
        (3, 0): (o, 3), (3, 1): (F.neg(a), 2), (3, 2): (b, 1), (3, 3): (F.neg(ab), 0),
    }
    mult = []
    for i in range(4):
        row = []
        for j in range(4):
            c, k = table[(i, j)]
            v = [z] * 4
            v[k] = c
            row.append(v)
        mult.append(row)
    return Algebra(F, mult, [o, z, z, z], name=f"({a},{b})")


def hamilton_quaternions(F: Field | None = None) -> Algebra:
    from .scalars import QQ
    F = F or QQ
    H = quaternion_algebra(F, -1, -1)
    H.name = "H"
    return H


def product_algebra(F: Field, k: int = 2) -> Algebra:
    """``K x ... x K`` with primitive idempotent basis."""
    z, o = F.zero(), F.one()
    mult = [[[o if (i == j == t) else z for t in range(k)] for j in range(k)] for i in range(k)]
    return Algebra(F, mult, [o] * k, name="x".join(["K"] * k))


def field_algebra(L) -> Algebra:
    """A finite extension viewed as an algebra over its base field."""
    if isinstance(L, GaloisExtension):
        L = L.field
    if not isinstance(L, ExtensionField):
        raise InvalidAlgebra("expected an extension field")
    n = L.n
    mult = [[list(L.table[i][j]) for j in range(n)] for i in range(n)]
    return Algebra(L.base, mult, list(L.unit), name=repr(L))


def truncated_polynomial(F: Field, n: int = 2) -> Algebra:
    """``K[x]/(x^n)`` with basis ``1, x, ..., x^{n-1}``."""
    z, o = F.zero(), F.one()
    mult = [[[o if (i + j == t) else z for t in range(n)] for j in range(n)] for i in range(n)]
    return Algebra(F, mult, linalg.unit_vector(F, n, 0), name=f"K[x]/x^{n}")


def endomorphism_algebra(A, x: str) -> Algebra:
    """``End_A(x)`` of a K-category, with ``a * b = a o b``."""
    F = A.field
    mult = [[A.compose(g, f, x, x, x) for f in A.basis(x, x)] for g in A.basis(x, x)]
    return Algebra(F, mult, A.ident[x], name=f"End({x})")


# --- bimodules --------------------------------------------------------------

class Bimodule:
    """``R``-``S`` bimodule on ``K^dim``.

    ``left[i]`` is the matrix of ``m -> r_i m`` and ``right[j]`` the matrix of
    ``m -> m s_j`` (both acting on column vectors).
    """

    def __init__(self, R: Algebra, S: Algebra, dim: int, left, right, name: str = ""):
        self.R = R
        self.S = S
        self.dim = dim
        self.left = [[list(r) for r in M] for M in left]
        self.right = [[list(r) for r in M] for M in right]
        self.name = name

    def __repr__(self):
        return f"Bimodule({self.name or '?'}: {self.R.name}-{self.S.name}, dim={self.dim})"

    @property
    def field(self):
        return self.R.field

    def act_left(self, r, m):
        F = self.field
        M = _combine(F, r, self.left, self.dim)
        return linalg.mat_vec(F, M, m)

    def act_right(self, m, s):
        F = self.field
        M = _combine(F, s, self.right, self.dim)
        return linalg.mat_vec(F, M, m)

    def left_matrix(self, r):
        return _combine(self.field, r, self.left, self.dim)

    def right_matrix(self, s):
        return _combine(self.field, s, self.right, self.dim)

    def validate(self) -> list[str]:
        F = self.field
        n = self.dim
        I = linalg.identity(F, n)
        problems = []
        if len(self.left) != self.R.dim or len(self.right) != self.S.dim:
            return ["action tensors have wrong length"]
        if self.left_matrix(self.R.unit) != I:
            problems.append("left action is not unital")
        if self.right_matrix(self.S.unit) != I:
            problems.append("right action is not unital")
        for i, j in itertools.product(range(self.R.dim), repeat=2):
            if linalg.mat_mul(F, self.left[i], self.left[j]) != self.left_matrix(self.R.mult[i][j]):
                problems.append("left action is not associative")
                break
        for i, j in itertools.product(range(self.S.dim), repeat=2):
            if linalg.mat_mul(F, self.right[j], self.right[i]) != self.right_matrix(self.S.mult[i][j]):
                problems.append("right action is not associative")
                break
        for Lm in self.left:
            for Rm in self.right:
                if linalg.mat_mul(F, Lm, Rm) != linalg.mat_mul(F, Rm, Lm):
                    problems.append("left and right actions do not commute")
                    return problems
        return problems

    def direct_sum(self, other: "Bimodule") -> "Bimodule":
        F = self.field
        return Bimodule(self.R, self.S, self.dim + other.dim,
                        [_block_diag(F, a, b) for a, b in zip(self.left, other.left)],
                        [_block_diag(F, a, b) for a, b in zip(self.right, other.right)],
                        name=f"{self.name}+{other.name}")

    def power(self, m: int) -> "Bimodule":
        out = self
        for _ in range(m - 1):
            out = out.direct_sum(self)
        return out


def _combine(F, coeffs, mats, n):
    out = linalg.zeros(F, n, n)
    for c, M in zip(coeffs, mats):
        if F.is_zero(c):
            continue
        out = [[F.add(o, F.mul(c, a)) for o, a in zip(ro, ra)] for ro, ra in zip(out, M)]
    return out


def _block_diag(F, A, B):
    a, b = len(A), len(B)
    z = F.zero()
    return [list(r) + [z] * b for r in A] + [[z] * a + list(r) for r in B]


def regular_bimodule(S: Algebra) -> Bimodule:
    return Bimodule(S, S, S.dim, [S.left_matrix(e) for e in S.basis()],
                    [S.right_matrix(e) for e in S.basis()], name=S.name)


def subspace_bimodule(A: Algebra, vectors, R: Algebra, r_images, S: Algebra, s_images,
                      name: str = "") -> Bimodule:
    """Bimodule structure on a subspace of ``A`` via multiplication in ``A``.

    ``r_images[i]`` / ``s_images[j]`` are the images in ``A`` of the bases of
    ``R`` and ``S`` (algebra maps, possibly non-unital into ``A`` as corners).
    """
    F = A.field
    C = linalg.Coordinates(F, vectors, A.dim)
    left = [linalg.transpose([C.coords(A.mul(r, v), check=True) for v in vectors], len(vectors))
            for r in r_images]
    right = [linalg.transpose([C.coords(A.mul(v, s), check=True) for v in vectors], len(vectors))
             for s in s_images]
    return Bimodule(R, S, len(vectors), left, right, name)


@dataclass
class BalancedTensor:
    """``M (x)_S N`` as a quotient of ``M (x)_K N``.

    ``rows``/``pivots`` are the reduced relators; quotient coordinates are the
    entries at the non-pivot columns after reduction.
    """

    module: Bimodule
    rows: list
    pivots: list
    free: list
    ambient: int

    def project(self, v):
        F = self.module.field
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not F.is_zero(c):
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return [v[c] for c in self.free]


def tensor_over(M: Bimodule, N: Bimodule) -> BalancedTensor:
    """Cokernel of ``mu_M (x) id - id (x) mu_N`` on ``M (x)_K S (x)_K N``."""
    if M.S.dim != N.R.dim or M.field != N.field:
        raise InvalidBimodule("bimodules are not composable")
    F = M.field
    a, b = M.dim, N.dim
    n = a * b
    rel = []
    for s in range(M.S.dim):
        Rs = M.right[s]
        Ls = N.left[s]
        for i in range(a):
            for j in range(b):
                v = [F.zero()] * n
                for i2 in range(a):
                    c = Rs[i2][i]
                    if not F.is_zero(c):
                        v[i2 * b + j] = F.add(v[i2 * b + j], c)
                for j2 in range(b):
                    c = Ls[j2][j]
                    if not F.is_zero(c):
                        v[i * b + j2] = F.sub(v[i * b + j2], c)
                if not linalg.is_zero_vec(F, v):
                    rel.append(v)
    rows, pivots = linalg.rref(F, rel, n) if rel else ([], [])
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    shell = BalancedTensor(None, rows, pivots, free, n)
    shell.module = Bimodule(M.R, N.S, len(free), [], [], name=f"{M.name}(x){N.name}")
    ident_b = linalg.identity(F, b)
    ident_a = linalg.identity(F, a)

    def transport(big):
        cols = []
        for c in free:
            e = [F.zero()] * n
            e[c] = F.one()
            cols.append(shell.project(linalg.mat_vec(F, big, e)))
        return linalg.transpose(cols, len(free))

    shell.module.left = [transport(linalg.kron(F, Lr, ident_b)) for Lr in M.left]
    shell.module.right = [transport(linalg.kron(F, ident_a, Rt)) for Rt in N.right]
    return shell


def bimodule_tensor(M: Bimodule, N: Bimodule) -> Bimodule:
    return tensor_over(M, N).module


def bimodule_homs(M: Bimodule, N: Bimodule):
    """Basis of ``Hom_{R-S}(M, N)`` as matrices (rows index N)."""
    F = M.field
    a, b = M.dim, N.dim
    nvar = a * b  # X[r][c] at index r * a + c

    def constraint(XA_mats):
        rows = []
        for (P, Q) in XA_mats:  # X P - Q X = 0 ; P is a x a (on M), Q is b x b (on N)
            for r in range(b):
                for c in range(a):
                    row = [F.zero()] * nvar
                    for k in range(a):
                        if not F.is_zero(P[k][c]):
                            row[r * a + k] = F.add(row[r * a + k], P[k][c])
                    for k in range(b):
                        if not F.is_zero(Q[r][k]):
                            row[k * a + c] = F.sub(row[k * a + c], Q[r][k])
                    rows.append(row)
        return rows

    pairs = list(zip(M.left, N.left)) + list(zip(M.right, N.right))
    rows = constraint(pairs)
    sols = linalg.nullspace(F, rows, nvar) if rows else [linalg.unit_vector(F, nvar, i) for i in range(nvar)]
    return [[s[r * a:(r + 1) * a] for r in range(b)] for s in sols]


@dataclass
class BimoduleIso:
    matrix: list | None
    inverse: list | None
    conclusive: bool = True

    def __bool__(self):
        return self.matrix is not None


def bimodule_iso(M: Bimodule, N: Bimodule, budget: int = 1 << 16, seed: int = 0) -> BimoduleIso:
    from .lincat import search_invertible
    F = M.field
    if M.dim != N.dim:
        return BimoduleIso(None, None, True)
    if M.dim == 0:
        return BimoduleIso([], [], True)
    space = bimodule_homs(M, N)
    if not space:
        return BimoduleIso(None, None, True)
    n = M.dim

    def try_candidate(c):
        X = linalg.zeros(F, n, n)
        for coef, B in zip(c, space):
            if not F.is_zero(coef):
                X = [[F.add(x, F.mul(coef, y)) for x, y in zip(rx, ry)] for rx, ry in zip(X, B)]
        inv = linalg.inverse(F, X)
        return None if inv is None else (X, inv)

    w, conclusive, _ = search_invertible(F, space, try_candidate, budget, seed)
    if w is None:
        return BimoduleIso(None, None, conclusive)
    return BimoduleIso(w[0], w[1], True)


def check_bimodule_iso(M: Bimodule, N: Bimodule, X) -> bool:
    F = M.field
    if linalg.inverse(F, X) is None and M.dim:
        return False
    for P, Q in list(zip(M.left, N.left)) + list(zip(M.right, N.right)):
        if linalg.mat_mul(F, X, P) != linalg.mat_mul(F, Q, X):
            return False
    return True
