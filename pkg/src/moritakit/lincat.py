"""Finitely presented K-linear categories, K-functors and natural transformations.

Every hom space ``A(x, y)`` carries a fixed ordered basis; a morphism is its
coefficient vector. Composition is stored as structure constants:
``comp[(x, y, z)][i][j][k]`` is the ``k``-th coordinate of ``g_i o f_j`` where
``g_i`` runs over the basis of ``A(y, z)`` and ``f_j`` over ``A(x, y)``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from . import linalg
from .scalars import Field, GaloisExtension, RingMismatch


class InvalidCategory(ValueError):
    pass


class InvalidPresentation(ValueError):
    pass


def pair_name(x: str, y: str) -> str:
    return f"({x},{y})"


class KCategory:
    def __init__(self, field: Field, objects: Sequence[str], hom: dict, comp: dict, ident: dict,
                 name: str = ""):
        self.field = field
        self.objects = list(objects)
        if len(set(self.objects)) != len(self.objects):
            raise InvalidCategory("object ids must be distinct")
        self.hom = {k: d for k, d in hom.items() if d}
        self.comp = comp
        self.ident = {x: list(v) for x, v in ident.items()}
        self.name = name
        self._terms: dict = {}

    def __repr__(self):
        return f"KCategory({self.name or '?'}, objects={self.objects}, field={self.field!r})"

    def dim(self, x: str, y: str) -> int:
        return self.hom.get((x, y), 0)

    def zero(self, x: str, y: str):
        return [self.field.zero()] * self.dim(x, y)

    def basis(self, x: str, y: str):
        n = self.dim(x, y)
        return [linalg.unit_vector(self.field, n, i) for i in range(n)]

    def identity(self, x: str):
        return list(self.ident[x])

    def terms(self, x: str, y: str, z: str):
        """Sparse structure constants ``(i, j, k, c)`` for ``A(y,z) x A(x,y) -> A(x,z)``."""
        key = (x, y, z)
        t = self._terms.get(key)
        if t is None:
            F = self.field
            c = self.comp.get(key)
            t = []
            if c is not None and self.dim(x, y) and self.dim(y, z) and self.dim(x, z):
                for i, row in enumerate(c):
                    for j, vec in enumerate(row):
                        for k, v in enumerate(vec):
                            if not F.is_zero(v):
                                t.append((i, j, k, v))
            self._terms[key] = t
        return t

    def compose(self, g, f, x: str, y: str, z: str):
        """``g o f`` for ``f: x -> y`` and ``g: y -> z``."""
        F = self.field
        out = [F.zero()] * self.dim(x, z)
        for i, j, k, c in self.terms(x, y, z):
            gi = g[i]
            if F.is_zero(gi):
                continue
            fj = f[j]
            if F.is_zero(fj):
                continue
            out[k] = F.add(out[k], F.mul(F.mul(gi, fj), c))
        return out

    def left_mult_matrix(self, g, x: str, y: str, z: str):
        """Matrix of ``A(x,y) -> A(x,z), f -> g o f``."""
        cols = [self.compose(g, f, x, y, z) for f in self.basis(x, y)]
        return linalg.transpose(cols, self.dim(x, z)) if cols else [[] for _ in range(self.dim(x, z))]

    def right_mult_matrix(self, f, x: str, y: str, z: str):
        """Matrix of ``A(y,z) -> A(x,z), g -> g o f``."""
        cols = [self.compose(g, f, x, y, z) for g in self.basis(y, z)]
        return linalg.transpose(cols, self.dim(x, z)) if cols else [[] for _ in range(self.dim(x, z))]

    def morphism(self, x: str, y: str, coeffs) -> "Morphism":
        return Morphism(self, x, y, list(coeffs))

    def full_subcategory(self, objects: Sequence[str], name: str = "") -> "KCategory":
        keep = list(objects)
        hom = {(x, y): self.dim(x, y) for x in keep for y in keep}
        comp = {(x, y, z): self.comp[(x, y, z)] for x in keep for y in keep for z in keep
                if (x, y, z) in self.comp}
        return KCategory(self.field, keep, hom, comp, {x: self.ident[x] for x in keep}, name)

    def to_json(self) -> dict:
        from .io import category_to_json
        return category_to_json(self)


@dataclass
class Morphism:
    category: KCategory
    src: str
    tgt: str
    coeffs: list

    def __post_init__(self):
        if len(self.coeffs) != self.category.dim(self.src, self.tgt):
            raise InvalidCategory(
                f"morphism {self.src}->{self.tgt} needs {self.category.dim(self.src, self.tgt)} coefficients")

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.tgt != self.src:
            raise InvalidCategory("morphisms are not composable")
        A = self.category
        return Morphism(A, other.src, self.tgt, A.compose(self.coeffs, other.coeffs, other.src, self.src, self.tgt))

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.category, self.src, self.tgt,
                        linalg.vec_add(self.category.field, self.coeffs, other.coeffs))

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.src == other.src and self.tgt == other.tgt
                and list(self.coeffs) == list(other.coeffs))


def validate_category(A: KCategory, max_triples: int | None = None) -> list[str]:
    """List of violated axioms; empty iff ``A`` is a valid K-category."""
    problems = []
    objs = A.objects
    obj_set = set(objs)
    for (x, y), d in A.hom.items():
        if x not in obj_set or y not in obj_set:
            problems.append(f"hom ({x},{y}) mentions unknown objects")
        if d < 0:
            problems.append(f"negative hom dimension at ({x},{y})")
    if problems:
        return problems
    for x in objs:
        if len(A.ident.get(x, [])) != A.dim(x, x):
            problems.append(f"identity of {x} has wrong length")
    for x, y, z in itertools.product(objs, repeat=3):
        dxy, dyz, dxz = A.dim(x, y), A.dim(y, z), A.dim(x, z)
        if dxy and dyz:
            c = A.comp.get((x, y, z))
            if c is None and dxz:
                problems.append(f"missing composition table for ({x},{y},{z})")
            elif c is not None and (len(c) != dyz or any(len(r) != dxy for r in c)
                                    or any(len(v) != dxz for r in c for v in r)):
                problems.append(f"composition table ({x},{y},{z}) has wrong shape")
    if problems:
        return problems
    for x, y in itertools.product(objs, repeat=2):
        for f in A.basis(x, y):
            if A.compose(A.ident[y], f, x, y, y) != f:
                problems.append(f"left unit law fails at ({x},{y})")
                break
            if A.compose(f, A.ident[x], x, x, y) != f:
                problems.append(f"right unit law fails at ({x},{y})")
                break
    checked = 0
    for w, x, y, z in itertools.product(objs, repeat=4):
        if not (A.dim(w, x) and A.dim(x, y) and A.dim(y, z)):
            continue
        bad = False
        for h in A.basis(y, z):
            for g in A.basis(x, y):
                hg = A.compose(h, g, x, y, z)
                for f in A.basis(w, x):
                    if A.compose(hg, f, w, x, z) != A.compose(h, A.compose(g, f, w, x, y), w, y, z):
                        bad = True
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            problems.append(f"associativity fails at ({w},{x},{y},{z})")
        checked += 1
        if max_triples is not None and checked >= max_triples:
            break
    return problems


def check_valid(A: KCategory) -> KCategory:
    problems = validate_category(A)
    if problems:
        raise InvalidCategory("; ".join(problems))
    return A


class KFunctor:
    """``images[(x, y)][j]`` is the image of the ``j``-th basis morphism of ``src(x, y)``."""

    def __init__(self, src: KCategory, tgt: KCategory, obj_map: dict, images: dict, name: str = ""):
        self.src = src
        self.tgt = tgt
        self.obj_map = dict(obj_map)
        self.images = {k: [list(v) for v in vs] for k, vs in images.items()}
        self.name = name

    def __repr__(self):
        return f"KFunctor({self.name or '?'}: {self.src.name} -> {self.tgt.name})"

    def __call__(self, x: str) -> str:
        return self.obj_map[x]

    def apply(self, f, x: str, y: str):
        B = self.tgt
        n = B.dim(self.obj_map[x], self.obj_map[y])
        return linalg.lincomb(B.field, f, self.images.get((x, y), []), n)

    def matrix(self, x: str, y: str):
        """Hom matrix ``src(x,y) -> tgt(Fx,Fy)`` (rows index the target basis)."""
        n = self.tgt.dim(self.obj_map[x], self.obj_map[y])
        return linalg.transpose(self.images.get((x, y), []), n)

    @classmethod
    def from_matrices(cls, src, tgt, obj_map, matrices: dict, name: str = ""):
        images = {}
        for (x, y), M in matrices.items():
            images[(x, y)] = linalg.transpose(M, src.dim(x, y))
        return cls(src, tgt, obj_map, images, name)

    def to_json(self) -> dict:
        from .io import functor_to_json
        return functor_to_json(self)


def validate_functor(F: KFunctor) -> list[str]:
    A, B = F.src, F.tgt
    problems = []
    if A.field != B.field:
        return ["source and target fields differ"]
    for x in A.objects:
        if F.obj_map.get(x) not in B.objects:
            problems.append(f"object {x} has no valid image")
    if problems:
        return problems
    for x, y in itertools.product(A.objects, repeat=2):
        imgs = F.images.get((x, y), [])
        if len(imgs) != A.dim(x, y) or any(len(v) != B.dim(F(x), F(y)) for v in imgs):
            problems.append(f"hom map ({x},{y}) has wrong shape")
    if problems:
        return problems
    for x in A.objects:
        if F.apply(A.ident[x], x, x) != B.ident[F(x)]:
            problems.append(f"F(1_{x}) != 1_F({x})")
    for x, y, z in itertools.product(A.objects, repeat=3):
        if not (A.dim(x, y) and A.dim(y, z)):
            continue
        for j, f in enumerate(A.basis(x, y)):
            Ff = F.images[(x, y)][j]
            for i, g in enumerate(A.basis(y, z)):
                lhs = F.apply(A.compose(g, f, x, y, z), x, z)
                rhs = B.compose(F.images[(y, z)][i], Ff, F(x), F(y), F(z))
                if lhs != rhs:
                    problems.append(f"F does not preserve composition at ({x},{y},{z})")
                    break
            else:
                continue
            break
    return problems


def identity_functor(A: KCategory) -> KFunctor:
    return KFunctor(A, A, {x: x for x in A.objects},
                    {(x, y): A.basis(x, y) for x in A.objects for y in A.objects}, name="id")


def compose_functors(G: KFunctor, F: KFunctor) -> KFunctor:
    """``G o F``."""
    A = F.src
    images = {}
    for x in A.objects:
        for y in A.objects:
            images[(x, y)] = [G.apply(v, F(x), F(y)) for v in F.images.get((x, y), [])]
    return KFunctor(A, G.tgt, {x: G(F(x)) for x in A.objects}, images,
                    name=f"{G.name}o{F.name}")


def is_isomorphism(F: KFunctor) -> bool:
    """Bijective on objects and on every hom space."""
    if sorted(F.obj_map.values()) != sorted(F.tgt.objects) or len(set(F.obj_map.values())) != len(F.obj_map):
        return False
    K = F.src.field
    for x in F.src.objects:
        for y in F.src.objects:
            n, m = F.src.dim(x, y), F.tgt.dim(F(x), F(y))
            if n != m or (n and linalg.rank(K, F.matrix(x, y), n) != n):
                return False
    return True


# --- constructors -----------------------------------------------------------

def category_from_matrices(field: Field, objects: Sequence[str], bases: dict, idents: dict,
                           name: str = "") -> KCategory:
    """K-category whose morphisms are matrices, composed by matrix multiplication.

    ``bases[(x, y)]`` is a list of linearly independent matrices spanning a
    space closed under the composition; ``idents[x]`` must lie in ``bases[(x,x)]``.
    """
    coords = {}
    for key, mats in bases.items():
        flat = [[a for row in M for a in row] for M in mats]
        length = len(flat[0]) if flat else 0
        coords[key] = linalg.Coordinates(field, flat, length)

    def flat(M):
        return [a for row in M for a in row]

    hom = {k: len(v) for k, v in bases.items() if v}
    comp = {}
    for x, y, z in itertools.product(objects, repeat=3):
        if hom.get((x, y)) and hom.get((y, z)) and hom.get((x, z)):
            C = coords[(x, z)]
            comp[(x, y, z)] = [[C.coords(flat(linalg.mat_mul(field, g, f)), check=True)
                                for f in bases[(x, y)]] for g in bases[(y, z)]]
    ident = {}
    for x in objects:
        ident[x] = coords[(x, x)].coords(flat(idents[x]), check=True) if hom.get((x, x)) else []
    return KCategory(field, objects, hom, comp, ident, name)


def algebra_as_category(R, obj: str = "•") -> KCategory:
    """One-object category with endomorphism algebra ``R`` (``g o f = g * f``)."""
    from .algebras import Algebra, InvalidAlgebra
    if not isinstance(R, Algebra):
        raise InvalidAlgebra("expected an Algebra")
    problems = R.validate()
    if problems:
        raise InvalidAlgebra("; ".join(problems))
    d = R.dim
    comp = {(obj, obj, obj): [[list(R.mult[i][j]) for j in range(d)] for i in range(d)]} if d else {}
    return KCategory(R.field, [obj], {(obj, obj): d}, comp, {obj: list(R.unit)}, name=R.name or "R")


@dataclass
class CategoryPresentation:
    """An ordinary finite category: arrows by name, composition table ``(g, f) -> g o f``."""

    objects: list
    arrows: dict          # name -> (src, tgt)
    composition: dict     # (g, f) -> name
    identities: dict      # object -> arrow name

    def validate(self) -> list[str]:
        problems = []
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.arrows.get(i) != (x, x):
                problems.append(f"bad identity for {x}")
        if problems:
            return problems
        for g, (y, z) in self.arrows.items():
            for f, (x, y2) in self.arrows.items():
                if y != y2:
                    continue
                h = self.composition.get((g, f))
                if h is None or self.arrows.get(h) != (x, z):
                    problems.append(f"composite {g}o{f} missing or ill-typed")
        if problems:
            return problems
        for a, (x, y) in self.arrows.items():
            if self.composition[(self.identities[y], a)] != a or self.composition[(a, self.identities[x])] != a:
                problems.append(f"unit law fails for {a}")
        for h, (y, z) in self.arrows.items():
            for g, (x, y2) in self.arrows.items():
                if y2 != y:
                    continue
                for f, (w, x2) in self.arrows.items():
                    if x2 != x:
                        continue
                    c = self.composition
                    if c[(c[(h, g)], f)] != c[(h, c[(g, f)])]:
                        problems.append(f"associativity fails at {h},{g},{f}")
        return problems


def free_kcategory(C: CategoryPresentation, field: Field, name: str = "") -> KCategory:
    """Linearization: hom spaces have the arrows of ``C`` as basis."""
    problems = C.validate()
    if problems:
        raise InvalidPresentation("; ".join(problems))
    by_hom: dict = {}
    for a, (x, y) in C.arrows.items():
        by_hom.setdefault((x, y), []).append(a)
    index = {a: by_hom[st].index(a) for a, st in C.arrows.items()}
    one, zero = field.one(), field.zero()
    hom = {k: len(v) for k, v in by_hom.items()}
    comp = {}
    for x, y, z in itertools.product(C.objects, repeat=3):
        if (x, y) in by_hom and (y, z) in by_hom:
            n = hom[(x, z)]
            table = []
            for g in by_hom[(y, z)]:
                row = []
                for f in by_hom[(x, y)]:
                    v = [zero] * n
                    v[index[C.composition[(g, f)]]] = one
                    row.append(v)
                table.append(row)
            comp[(x, y, z)] = table
    ident = {}
    for x in C.objects:
        v = [zero] * hom[(x, x)]
        v[index[C.identities[x]]] = one
        ident[x] = v
    return KCategory(field, C.objects, hom, comp, ident, name)


def tensor_product(A: KCategory, B: KCategory) -> KCategory:
    """``A (x) B``: pairs of objects, hom spaces ``A(x,x') (x) B(y,y')``.

    The basis of a tensor hom space is ordered lexicographically by
    (A-index, B-index).
    """
    if A.field != B.field:
        raise RingMismatch(f"{A.field!r} vs {B.field!r}")
    F = A.field
    objs = [pair_name(x, y) for x in A.objects for y in B.objects]
    pairs = {pair_name(x, y): (x, y) for x in A.objects for y in B.objects}
    hom = {}
    for s, (x, y) in pairs.items():
        for t, (x2, y2) in pairs.items():
            d = A.dim(x, x2) * B.dim(y, y2)
            if d:
                hom[(s, t)] = d
    comp = {}
    zero = F.zero()
    for s, (x1, y1) in pairs.items():
        for t, (x2, y2) in pairs.items():
            if not hom.get((s, t)):
                continue
            for u, (x3, y3) in pairs.items():
                if not hom.get((t, u)) or not hom.get((s, u)):
                    continue
                dA1, dB1 = A.dim(x1, x2), B.dim(y1, y2)
                dA2, dB2 = A.dim(x2, x3), B.dim(y2, y3)
                dB3 = B.dim(y1, y3)
                n = hom[(s, u)]
                table = [[[zero] * n for _ in range(dA1 * dB1)] for _ in range(dA2 * dB2)]
                for (i, j, k, c) in A.terms(x1, x2, x3):
                    for (i2, j2, k2, c2) in B.terms(y1, y2, y3):
                        cell = table[i * dB2 + i2][j * dB1 + j2]
                        kk = k * dB3 + k2
                        cell[kk] = F.add(cell[kk], F.mul(c, c2))
                comp[(s, t, u)] = table
    ident = {}
    for s, (x, y) in pairs.items():
        ia, ib = A.ident[x], B.ident[y]
        ident[s] = [F.mul(a, b) for a in ia for b in ib]
    return KCategory(F, objs, hom, comp, ident, name=f"{A.name}(x){B.name}")


def tensor_functor(F: KFunctor, G: KFunctor) -> KFunctor:
    """``F (x) G`` between tensor categories (images are Kronecker products)."""
    src = tensor_product(F.src, G.src)
    tgt = tensor_product(F.tgt, G.tgt)
    K = src.field
    obj_map = {}
    images = {}
    for x in F.src.objects:
        for y in G.src.objects:
            obj_map[pair_name(x, y)] = pair_name(F(x), G(y))
    for x, x2 in itertools.product(F.src.objects, repeat=2):
        for y, y2 in itertools.product(G.src.objects, repeat=2):
            imgs = []
            for a in F.images.get((x, x2), []):
                for b in G.images.get((y, y2), []):
                    imgs.append([K.mul(p, q) for p in a for q in b])
            images[(pair_name(x, y), pair_name(x2, y2))] = imgs
    return KFunctor(src, tgt, obj_map, images, name=f"{F.name}(x){G.name}")


def opposite(A: KCategory) -> KCategory:
    hom = {(y, x): d for (x, y), d in A.hom.items()}
    comp = {}
    for (x, y, z), c in A.comp.items():
        # A(y,z) x A(x,y) -> A(x,z) becomes A^op(z,y) x A^op(y,x) -> A^op(z,x)
        comp[(z, y, x)] = [[c[j][i] for j in range(len(c))] for i in range(len(c[0]) if c else 0)]
    return KCategory(A.field, A.objects, hom, comp, A.ident, name=f"{A.name}^op")


def _embedding(target):
    if isinstance(target, GaloisExtension):
        return target.field, target.base, target.embed
    L, K, embed = target
    return L, K, embed


def scalar_extension(A: KCategory, target) -> KCategory:
    """Base change along ``K -> L``; ``target`` is a GaloisExtension or ``(L, K, embed)``."""
    L, K, embed = _embedding(target)
    if A.field != K:
        raise RingMismatch(f"category is over {A.field!r}, extension is over {K!r}")
    comp = {k: [[[embed(c) for c in v] for v in row] for row in tab] for k, tab in A.comp.items()}
    ident = {x: [embed(c) for c in v] for x, v in A.ident.items()}
    return KCategory(L, A.objects, dict(A.hom), comp, ident, name=f"{A.name}_L")


def scalar_extension_functor(F: KFunctor, target) -> KFunctor:
    L, K, embed = _embedding(target)
    images = {k: [[embed(c) for c in v] for v in vs] for k, vs in F.images.items()}
    return KFunctor(scalar_extension(F.src, target), scalar_extension(F.tgt, target),
                    F.obj_map, images, name=f"{F.name}_L")


# --- natural transformations --------------------------------------------------

@dataclass
class NaturalTransformation:
    F0: KFunctor
    F1: KFunctor
    components: dict  # x -> vector in tgt(F0 x, F1 x)
    inverses: dict = dc_field(default_factory=dict)

    def verify(self) -> bool:
        A, B = self.F0.src, self.F0.tgt
        for x, y in itertools.product(A.objects, repeat=2):
            for j in range(A.dim(x, y)):
                f0 = self.F0.images[(x, y)][j]
                f1 = self.F1.images[(x, y)][j]
                a, b, c, d = self.F0(x), self.F0(y), self.F1(x), self.F1(y)
                lhs = B.compose(self.components[y], f0, a, b, d)
                rhs = B.compose(f1, self.components[x], a, c, d)
                if lhs != rhs:
                    return False
        return True

    def verify_invertible(self) -> bool:
        B = self.F0.tgt
        for x in self.F0.src.objects:
            a, b = self.F0(x), self.F1(x)
            inv = self.inverses.get(x)
            if inv is None:
                return False
            if B.compose(inv, self.components[x], a, b, a) != B.ident[a]:
                return False
            if B.compose(self.components[x], inv, b, a, b) != B.ident[b]:
                return False
        return True


def _same_shape(A: KCategory, B: KCategory) -> bool:
    if A is B:
        return True
    return list(A.objects) == list(B.objects) and all(
        A.dim(x, y) == B.dim(x, y) for x in A.objects for y in A.objects)


def _check_parallel(F0: KFunctor, F1: KFunctor):
    if not (_same_shape(F0.src, F1.src) and _same_shape(F0.tgt, F1.tgt)):
        raise InvalidCategory("functors are not parallel")


def nat_trans_space(F0: KFunctor, F1: KFunctor):
    """Basis of the K-space of natural transformations ``F0 => F1``.

    Each basis element is a dict ``object -> component vector``.
    """
    _check_parallel(F0, F1)
    A, B = F0.src, F0.tgt
    K = A.field
    offsets = {}
    total = 0
    for x in A.objects:
        offsets[x] = total
        total += B.dim(F0(x), F1(x))
    rows = []
    for x, y in itertools.product(A.objects, repeat=2):
        a, b, c, d = F0(x), F0(y), F1(x), F1(y)
        n_out = B.dim(a, d)
        if not n_out:
            continue
        for j in range(A.dim(x, y)):
            f0 = F0.images[(x, y)][j]
            f1 = F1.images[(x, y)][j]
            block = [[K.zero()] * total for _ in range(n_out)]
            # eta_y o F0(f)
            for t, e in enumerate(B.basis(b, d)):
                v = B.compose(e, f0, a, b, d)
                for r in range(n_out):
                    block[r][offsets[y] + t] = K.add(block[r][offsets[y] + t], v[r])
            # - F1(f) o eta_x
            for t, e in enumerate(B.basis(a, c)):
                v = B.compose(f1, e, a, c, d)
                for r in range(n_out):
                    block[r][offsets[x] + t] = K.sub(block[r][offsets[x] + t], v[r])
            rows.extend(block)
    sols = linalg.nullspace(K, rows, total) if rows else [linalg.unit_vector(K, total, i) for i in range(total)]
    out = []
    for s in sols:
        out.append({x: s[offsets[x]:offsets[x] + B.dim(F0(x), F1(x))] for x in A.objects})
    return out


def inverse_morphism(B: KCategory, m, a: str, b: str):
    """Two-sided inverse of ``m: a -> b`` in ``B``, or None."""
    K = B.field
    n = B.dim(b, a)
    if B.dim(a, a) == 0 and B.dim(b, b) == 0:
        return []
    if n == 0:
        return None
    # zeta -> zeta o m in End(a) and zeta -> m o zeta in End(b)
    cols = []
    for e in B.basis(b, a):
        cols.append(B.compose(e, m, a, b, a) + B.compose(m, e, b, a, b))
    M = linalg.transpose(cols, B.dim(a, a) + B.dim(b, b))
    rhs = list(B.ident[a]) + list(B.ident[b])
    return linalg.solve(K, M, rhs, n)


@dataclass
class IsoResult:
    witness: NaturalTransformation | None
    conclusive: bool = True
    tried: int = 0

    def __bool__(self):
        return self.witness is not None

    @property
    def status(self) -> str:
        if self.witness is not None:
            return "iso"
        return "none" if self.conclusive else "inconclusive"


def search_invertible(K: Field, basis: list, try_candidate: Callable, budget: int = 1 << 16,
                      seed: int = 0, trials: int = 40):
    """Look for a combination of ``basis`` accepted by ``try_candidate``.

    ``try_candidate(coeffs)`` returns a witness or None. Returns
    ``(witness, conclusive, tried)``. Over a finite field whose space fits in the
    budget the enumeration is exhaustive; otherwise ``conclusive`` is False when
    nothing was found.
    """
    r = len(basis)
    tried = 0
    seen = set()

    def attempt(c):
        nonlocal tried
        key = tuple(c)
        if key in seen:
            return None
        seen.add(key)
        tried += 1
        return try_candidate(list(c))

    zero, one = K.zero(), K.one()
    for i in range(r):
        w = attempt([one if t == i else zero for t in range(r)])
        if w is not None:
            return w, True, tried
    if K.is_finite():
        elems = list(K.elements())
        if len(elems) ** r <= budget:
            for c in itertools.product(elems, repeat=r):
                w = attempt(c)
                if w is not None:
                    return w, True, tried
            return None, True, tried
        rng = random.Random(seed)
        for _ in range(budget):
            w = attempt([K.random(rng) for _ in range(r)])
            if w is not None:
                return w, False, tried
        return None, False, tried
    small = [K.from_int(v) for v in (0, 1, -1)]
    count = 0
    for c in itertools.product(small, repeat=r):
        if count >= budget:
            break
        count += 1
        w = attempt(c)
        if w is not None:
            return w, False, tried
    rng = random.Random(seed)
    for _ in range(trials):
        w = attempt([_random_scalar(K, rng) for _ in range(r)])
        if w is not None:
            return w, False, tried
    return None, False, tried


def functor_iso_test(F0: KFunctor, F1: KFunctor, budget: int = 1 << 16, seed: int = 0) -> IsoResult:
    """Search for a natural isomorphism ``F0 => F1``.

    Sound always; a true decision over finite fields within ``budget``.
    """
    A, B = F0.src, F0.tgt
    if not A.objects:
        return IsoResult(NaturalTransformation(F0, F1, {}, {}), True, 0)
    space = nat_trans_space(F0, F1)
    if not space:
        return IsoResult(None, True, 0)
    K = A.field

    def combine(coeffs):
        comps = {}
        for x in A.objects:
            n = B.dim(F0(x), F1(x))
            comps[x] = linalg.lincomb(K, coeffs, [s[x] for s in space], n)
        return comps

    def try_candidate(coeffs):
        comps = combine(coeffs)
        invs = {}
        for x in A.objects:
            inv = inverse_morphism(B, comps[x], F0(x), F1(x))
            if inv is None:
                return None
            invs[x] = inv
        return NaturalTransformation(F0, F1, comps, invs)

    w, conclusive, tried = search_invertible(K, space, try_candidate, budget, seed)
    return IsoResult(w, conclusive if w is None else True, tried)


def _random_scalar(K: Field, rng):
    try:
        return K.random(rng, height=20)
    except TypeError:
        return K.random(rng)
