"""Seeded random instances for property tests and the acceptance runner.

Random categories are realized inside matrix algebras: pick orthogonal
diagonal idempotents ``E_x`` (the objects) and a few random matrices of shape
``E_y R E_x``, close the span under products, and read off the Peirce blocks
``E_y A E_x`` as hom spaces. Subcategories come from closing a subset of the
generators, so inclusions are honest functors.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linalg
from .algebras import (Algebra, Bimodule, endomorphism_algebra, matrix_algebra, regular_bimodule,
                       scalar_algebra, subspace_bimodule)
from .lincat import KCategory, KFunctor, category_from_matrices, identity_functor
from .scalars import Field


@dataclass
class MatrixModel:
    """A category of matrices with its hom bases and identities."""

    category: KCategory
    bases: dict
    idents: dict
    size: int


def _flat(M):
    return [a for row in M for a in row]


def _unflat(v, n):
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def _closure(F: Field, mats, n: int, cap: int = 64):
    """K-basis (flattened) of the non-unital algebra generated by ``mats``."""
    basis = linalg.span_basis(F, [_flat(M) for M in mats], n * n)
    grew = True
    while grew:
        grew = False
        prods = [_flat(linalg.mat_mul(F, _unflat(a, n), _unflat(b, n))) for a in basis for b in basis]
        new = linalg.span_basis(F, basis + prods, n * n)
        if len(new) > len(basis):
            basis = new
            grew = True
        if len(basis) > cap:
            break
    return basis


def _diag_idempotents(F: Field, blocks, n):
    out = []
    o = 0
    for b in blocks:
        E = [[F.zero()] * n for _ in range(n)]
        for i in range(o, o + b):
            E[i][i] = F.one()
        out.append(E)
        o += b
    return out


def _peirce(F: Field, basis, idems, n):
    """Hom bases ``E_y A E_x`` for the closed algebra ``basis``."""
    bases = {}
    for x, Ex in enumerate(idems):
        for y, Ey in enumerate(idems):
            vecs = [_flat(linalg.mat_mul(F, linalg.mat_mul(F, Ey, _unflat(a, n)), Ex)) for a in basis]
            span = linalg.span_basis(F, vecs, n * n)
            bases[(x, y)] = [_unflat(v, n) for v in span]
    return bases


def _random_block(F: Field, rng: random.Random, Ey, Ex, n):
    R = [[F.random(rng) for _ in range(n)] for _ in range(n)]
    return linalg.mat_mul(F, linalg.mat_mul(F, Ey, R), Ex)


def _model(F: Field, names, idems, gens, n, name) -> MatrixModel:
    basis = _closure(F, idems + gens, n)
    raw = _peirce(F, basis, idems, n)
    bases = {(names[x], names[y]): mats for (x, y), mats in raw.items()}
    idents = {names[x]: idems[x] for x in range(len(names))}
    return MatrixModel(category_from_matrices(F, names, bases, idents, name=name), bases, idents, n)


def random_matrix_model(F: Field, rng: random.Random, max_objects: int = 2, max_dim: int = 2,
                        size: int = 4, generators: int = 3, tries: int = 200) -> tuple[MatrixModel, list, list]:
    """Random category with at most ``max_objects`` objects and hom dims at most ``max_dim``.

    Returns ``(model, idempotents, generator matrices)`` so callers can build subcategories.
    """
    for _ in range(tries):
        k = rng.randint(1, max_objects)
        n = rng.randint(k, max(k, size))
        cuts = sorted(rng.sample(range(1, n), k - 1)) if k > 1 else []
        blocks = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        idems = _diag_idempotents(F, blocks, n)
        gens = []
        for _ in range(rng.randint(0, generators)):
            x, y = rng.randrange(k), rng.randrange(k)
            G = _random_block(F, rng, idems[y], idems[x], n)
            if any(not F.is_zero(a) for a in _flat(G)):
                gens.append(G)
        names = [f"x{i}" for i in range(k)]
        try:
            model = _model(F, names, idems, gens, n, name="rand")
        except Exception:
            continue
        if max(model.category.hom.values(), default=0) <= max_dim:
            return model, idems, gens
    raise RuntimeError("no sample within the requested bounds")


def random_category(F: Field, rng: random.Random, max_objects: int = 2, max_dim: int = 2) -> KCategory:
    return random_matrix_model(F, rng, max_objects, max_dim)[0].category


def _inclusion(sub: MatrixModel, big: MatrixModel, obj_map: dict) -> KFunctor:
    F = big.category.field
    images = {}
    for (x, y), mats in sub.bases.items():
        C = linalg.Coordinates(F, [_flat(M) for M in big.bases.get((obj_map[x], obj_map[y]), [])],
                               big.size * big.size)
        images[(x, y)] = [C.coords(_flat(M), check=True) for M in mats]
    for x in sub.category.objects:
        for y in sub.category.objects:
            images.setdefault((x, y), [])
    return KFunctor(sub.category, big.category, obj_map, images, name="incl")


def random_functor(F: Field, rng: random.Random, max_objects: int = 3, max_dim: int = 2) -> KFunctor:
    """A random functor between random categories.

    Either a wide subcategory inclusion (close a subset of the generators) or a
    reindexing ``x_i -> f(x_i)`` with repeated targets, both on a random target.
    """
    model, idems, gens = random_matrix_model(F, rng, max_objects, max_dim)
    B = model.category
    names = list(B.objects)
    if rng.random() < 0.5:
        keep = [G for G in gens if rng.random() < 0.5]
        sub = _model(F, names, idems, keep, model.size, name="sub")
        return _inclusion(sub, model, {x: x for x in names})
    m = rng.randint(1, max_objects)
    targets = [rng.randrange(len(names)) for _ in range(m)]
    src_names = [f"a{i}" for i in range(m)]
    # hom spaces between repeated idempotents are the full Peirce blocks of B
    bases = {(src_names[i], src_names[j]): model.bases[(names[targets[i]], names[targets[j]])]
             for i in range(m) for j in range(m)}
    idents = {src_names[i]: idems[targets[i]] for i in range(m)}
    sub = MatrixModel(category_from_matrices(F, src_names, bases, idents, name="re"), bases, idents, model.size)
    return _inclusion(sub, model, {src_names[i]: names[targets[i]] for i in range(m)})


def random_images(V, rng: random.Random, max_images: int = 2):
    """A few objects of a saturation view: base objects or corners ``(x, e)``."""
    A = V.base
    out = []
    for _ in range(rng.randint(1, max_images)):
        x = rng.choice(A.objects)
        d = A.dim(x, x)
        if d and rng.random() < 0.5:
            idems = _endo_idempotents(A, x)
            if idems:
                out.append(V.obj((x,), rng.choice(idems)))
                continue
        out.append(V.base_object(x))
    return out


def _endo_idempotents(A: KCategory, x: str, limit: int = 64):
    F = A.field
    d = A.dim(x, x)
    found = []
    if F.is_finite() and F.order ** d <= limit:
        for v in itertools.product(list(F.elements()), repeat=d):
            v = list(v)
            if A.compose(v, v, x, x, x) == v and not linalg.is_zero_vec(F, v):
                found.append(v)
    return found


def random_morita_equivalence(F: Field, rng: random.Random, max_objects: int = 2, max_dim: int = 2,
                              tries: int = 100) -> KFunctor:
    """Inclusion of a full subcategory that generates additively (rejection sampled)."""
    from .morita import is_morita_equivalence
    for _ in range(tries):
        model, _, _ = random_matrix_model(F, rng, max_objects, max_dim)
        B = model.category
        objs = [x for x in B.objects if rng.random() < 0.7] or [B.objects[0]]
        A = B.full_subcategory(objs, name="full")
        images = {(x, y): B.basis(x, y) for x in objs for y in objs}
        G = KFunctor(A, B, {x: x for x in objs}, images, name="full")
        if is_morita_equivalence(G):
            return G
    return identity_functor(B)


def corner_bimodule(L: Field, n: int = 2) -> tuple[Bimodule, Bimodule]:
    """``e_11 M_n(L)`` as an ``L``-``M_n(L)`` bimodule and ``M_n(L) e_11`` as its mirror."""
    A = matrix_algebra(L, n)
    B = A.basis()
    R = scalar_algebra(L)
    e = B[0]
    row = [B[j] for j in range(n)]
    col = [B[i * n] for i in range(n)]
    M = subspace_bimodule(A, row, R, [e], A, B, name="eM")
    N = subspace_bimodule(A, col, A, B, R, [e], name="Me")
    return M, N


def random_bimodule_pair(L: Field, rng: random.Random) -> tuple[Bimodule, Bimodule]:
    """Composable pair ``M`` (R-S) and ``N`` (S-T) built from corners and free modules."""
    n = rng.choice([1, 2])
    M, N = corner_bimodule(L, 2)
    kind = rng.randrange(3)
    if kind == 0:
        return M, N
    if kind == 1:
        return N, M
    # free modules; a rank-two factor only over L itself to keep Cor small
    S = matrix_algebra(L, n)
    reg = regular_bimodule(S)
    if n == 1 and rng.random() < 0.5:
        return reg, reg.direct_sum(reg)
    return reg, reg


def random_projective_bimodule(F: Field, rng: random.Random) -> Bimodule:
    """A bimodule over small matrix algebras that is f.g. projective on the right."""
    kind = rng.randrange(3)
    if kind == 0:
        n = rng.choice([1, 2, 3])
        return regular_bimodule(matrix_algebra(F, n))
    if kind == 1:
        n = rng.choice([2, 3])
        M, N = corner_bimodule(F, n)
        return M if rng.random() < 0.5 else N
    reg = regular_bimodule(matrix_algebra(F, rng.choice([1, 2])))
    return reg.direct_sum(reg)


def random_algebra(F: Field, rng: random.Random, max_dim: int = 4) -> Algebra:
    """Endomorphism algebra of a random one-object matrix category."""
    model, _, _ = random_matrix_model(F, rng, 1, max_dim)
    A = model.category
    return endomorphism_algebra(A, A.objects[0])
