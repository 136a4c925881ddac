"""Azumaya certification and Brauer-class arithmetic on algebra representatives."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .algebras import Algebra, InvalidAlgebra, is_algebra_hom, matrix_algebra
from .scalars import PrimeField


class NotAzumaya(ValueError):
    pass


def sandwich_map(A: Algebra):
    """Matrix of ``A (x) A^op -> End_K(A)``, ``a (x) b -> (x -> a x b)``.

    Column ``i * d + j`` is the flattened (row-major) matrix of ``x -> a_i x a_j``.
    """
    problems = A.validate()
    if problems:
        raise InvalidAlgebra("; ".join(problems))
    F = A.field
    d = A.dim
    B = A.basis()
    cols = []
    for i in range(d):
        for j in range(d):
            M = [[F.zero()] * d for _ in range(d)]
            for c in range(d):
                v = A.mul(B[i], A.mult[c][j])
                for r in range(d):
                    M[r][c] = v[r]
            cols.append([a for row in M for a in row])
    return linalg.transpose(cols, d * d)


@dataclass
class AzumayaReport:
    ok: bool
    rank: int
    dim: int

    def __bool__(self):
        return self.ok

    def certificate(self) -> dict:
        return {"rank": self.rank, "expected": self.dim * self.dim}


def is_azumaya(A: Algebra) -> AzumayaReport:
    S = sandwich_map(A)
    r = linalg.rank(A.field, S, A.dim * A.dim) if A.dim else 0
    return AzumayaReport(r == A.dim * A.dim and A.dim > 0, r, A.dim)


def sandwich_is_homomorphism(A: Algebra) -> bool:
    """The sandwich map is an algebra map ``A (x) A^op -> M_d(K)``."""
    return is_algebra_hom(A.tensor(A.opposite()), matrix_algebra(A.field, A.dim), sandwich_map(A))


def _require(A: Algebra):
    if not is_azumaya(A):
        raise NotAzumaya(f"{A.name or 'algebra'} is not Azumaya")


def brauer_mul(A: Algebra, B: Algebra) -> Algebra:
    _require(A)
    _require(B)
    C = A.tensor(B)
    _require(C)
    return C


def brauer_inv(A: Algebra) -> Algebra:
    _require(A)
    C = A.opposite()
    _require(C)
    return C


def swap_matrix(A: Algebra, B: Algebra):
    """Permutation ``a (x) b -> b (x) a`` from ``A (x) B`` to ``B (x) A``."""
    F = A.field
    n = A.dim * B.dim
    M = [[F.zero()] * n for _ in range(n)]
    for i in range(A.dim):
        for j in range(B.dim):
            M[j * A.dim + i][i * B.dim + j] = F.one()
    return M


def associator_matrix(A: Algebra, B: Algebra, C: Algebra):
    """``(A (x) B) (x) C -> A (x) (B (x) C)``; with lexicographic bases it is the identity."""
    return linalg.identity(A.field, A.dim * B.dim * C.dim)


# --- trivialization ----------------------------------------------------------------

@dataclass
class TrivializeResult:
    idempotent: list | None
    method: str
    examined: int
    exhausted: bool = False
    notes: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.idempotent is not None

    @property
    def status(self) -> str:
        return "found" if self.idempotent is not None else "unknown"


def corner_dim(A: Algebra, e) -> int:
    vecs = [A.mul(A.mul(e, b), e) for b in A.basis()]
    return linalg.rank(A.field, vecs, A.dim)


def two_sided_ideal_dim(A: Algebra, e) -> int:
    B = A.basis()
    vecs = [A.mul(A.mul(a, e), b) for a in B for b in B]
    return linalg.rank(A.field, vecs, A.dim)


def check_trivializing(A: Algebra, e) -> bool:
    """``e^2 = e``, ``eAe`` is one-dimensional and ``AeA = A``."""
    e = list(e)
    if A.mul(e, e) != e:
        return False
    return corner_dim(A, e) == 1 and two_sided_ideal_dim(A, e) == A.dim


def _low_support(A: Algebra, coeffs, max_support: int):
    d = A.dim
    for k in range(1, max_support + 1):
        for support in itertools.combinations(range(d), k):
            for vals in itertools.product(coeffs, repeat=k):
                e = [A.field.zero()] * d
                for idx, v in zip(support, vals):
                    e[idx] = v
                yield e


def _numpy_idempotents(A: Algebra, budget: int, chunk: int = 4096):
    """All idempotents of an algebra over a prime field, in lexicographic order."""
    F = A.field
    p = F.p
    d = A.dim
    T = np.zeros((d, d, d), dtype=np.int64)
    for i, j, k, c in A.terms():
        T[i, j, k] = c
    total = p ** d
    examined = 0
    for start in range(0, min(total, budget), chunk):
        stop = min(start + chunk, total, budget)
        idx = np.arange(start, stop, dtype=np.int64)
        X = np.zeros((len(idx), d), dtype=np.int64)
        rem = idx.copy()
        for pos in range(d - 1, -1, -1):
            X[:, pos] = rem % p
            rem //= p
        sq = np.einsum("ni,ijk->njk", X, T) % p
        sq = np.einsum("njk,nj->nk", sq, X) % p
        hit = np.flatnonzero(np.all(sq == X, axis=1))
        examined = stop
        for h in hit:
            yield [int(v) for v in X[h]], examined
    return


def morita_trivialize(A: Algebra, budget: int = 1 << 17, known_iso=None,
                      max_support: int = 2) -> TrivializeResult:
    """Search for ``e`` with ``e^2 = e``, ``dim eAe = 1`` and ``AeA = A``.

    Order: low-support candidates, pull back of ``e_11`` through ``known_iso``
    (a matrix of an algebra isomorphism ``A -> M_n(K)``), then exhaustive
    enumeration within ``budget`` (over Q: the box ``{0, +-1/2, +-1}^d``). Returns
    ``unknown`` otherwise, with the number of candidates examined.
    """
    _require(A)
    F = A.field
    d = A.dim
    examined = 0
    if d == 1:
        return TrivializeResult(list(A.unit), "unit", 1)
    if F.is_finite():
        coeffs = [c for c in F.elements() if not F.is_zero(c)]
    else:
        half = F.inv(F.from_int(2))
        coeffs = [F.one(), F.from_int(-1), half, F.neg(half)]
    for e in _low_support(A, coeffs, max_support):
        examined += 1
        if check_trivializing(A, e):
            return TrivializeResult(e, "low-support", examined)
    if known_iso is not None:
        n = int(round(len(known_iso) ** 0.5))
        Mn = matrix_algebra(F, n)
        inv = linalg.inverse(F, known_iso)
        if inv is not None and is_algebra_hom(A, Mn, known_iso):
            e = linalg.mat_vec(F, inv, linalg.unit_vector(F, n * n, 0))
            examined += 1
            if check_trivializing(A, e):
                return TrivializeResult(e, "pullback", examined)
    if isinstance(F, PrimeField):
        total = F.p ** d
        seen = 0
        for e, seen in _numpy_idempotents(A, budget):
            if check_trivializing(A, e):
                return TrivializeResult(e, "exhaustive", examined + seen)
        seen = min(total, budget)
        return TrivializeResult(None, "exhaustive", examined + seen, exhausted=seen >= total,
                                notes={"space": total, "budget": budget})
    if F.is_finite():
        total = F.order ** d
        seen = 0
        for e in itertools.product(list(F.elements()), repeat=d):
            if seen >= budget:
                break
            seen += 1
            e = list(e)
            if A.mul(e, e) == e and check_trivializing(A, e):
                return TrivializeResult(e, "exhaustive", examined + seen)
        return TrivializeResult(None, "exhaustive", examined + seen, exhausted=seen >= total,
                                notes={"space": total, "budget": budget})
    # over Q: a bounded box of half-integers
    half = F.inv(F.from_int(2))
    box = [F.from_int(-1), F.neg(half), F.zero(), half, F.one()]
    seen = 0
    for e in itertools.product(box, repeat=d):
        if seen >= budget:
            break
        seen += 1
        e = list(e)
        if A.mul(e, e) == e and check_trivializing(A, e):
            return TrivializeResult(e, "box", examined + seen)
    return TrivializeResult(None, "box", examined + seen, exhausted=seen >= 5 ** d,
                            notes={"box": ["-1", "-1/2", "0", "1/2", "1"], "space": 5 ** d})


def same_brauer_class(A: Algebra, B: Algebra, budget: int = 1 << 17) -> TrivializeResult:
    """``[A] = [B]`` iff ``A (x) B^op`` Morita-trivializes; a semi-decision."""
    _require(A)
    _require(B)
    C = A.tensor(B.opposite())
    known = None
    if A.dim == B.dim and A.mult == B.mult and A.unit == B.unit:
        known = sandwich_map(A)
    return morita_trivialize(C, budget, known_iso=known)


def quaternion_conjugation(H: Algebra):
    """Matrix of ``q -> conj(q)``, an isomorphism ``H -> H^op``."""
    F = H.field
    D = [F.one(), F.from_int(-1), F.from_int(-1), F.from_int(-1)]
    return [[D[i] if i == j else F.zero() for j in range(4)] for i in range(4)]


def corner_homap(A: Algebra, e):
    """The HoMap ``K -> A`` picking ``(o, e)``."""
    from .algebras import scalar_algebra
    from .envelopes import SatFunctor, SatView
    from .morita import HoMap
    Acat = A.as_category()
    K = scalar_algebra(A.field).as_category()
    V = SatView(Acat)
    (o,) = Acat.objects
    (k,) = K.objects
    s = V.obj((o,), e)
    G = SatFunctor(K, V, {k: s}, {(k, k): [list(e)]}, name="corner")
    return HoMap(K, Acat, G)
