"""Additive hull, idempotent completion and the lazy saturation view.

An object of the saturation is a word ``(x_1, ..., x_n)`` of base objects
together with an idempotent block matrix ``e`` on it. Hull morphisms
``w -> w'`` are block matrices ``[a_ij]`` with ``a_ij`` in ``A(w_j, w'_i)``,
stored flat: blocks ordered by target position, then source position, then
base coordinates. Morphisms of the view are coordinate vectors with respect
to the canonical basis of ``e' . Mat(w, w') . e``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .lincat import KCategory, KFunctor, validate_functor


class ObjectMismatch(ValueError):
    pass


class NotIdempotent(ValueError):
    pass


class BoundMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SatObject:
    word: tuple
    idem: tuple  # flat hull vector of the idempotent on ``word``

    @property
    def key(self):
        return (self.word, self.idem)


class SatView:
    def __init__(self, base: KCategory):
        self.base = base
        self.field = base.field
        self._hom: dict = {}
        self._coords: dict = {}
        self._layout: dict = {}

    def __repr__(self):
        return f"SatView({self.base.name})"

    # --- hull layer ---------------------------------------------------------

    def layout(self, w: tuple, w2: tuple):
        """Offsets of the blocks of ``Mat(w, w2)`` and the total dimension."""
        key = (w, w2)
        lay = self._layout.get(key)
        if lay is None:
            offs = {}
            n = 0
            for i, y in enumerate(w2):
                for j, x in enumerate(w):
                    offs[(i, j)] = n
                    n += self.base.dim(x, y)
            lay = (offs, n)
            self._layout[key] = lay
        return lay

    def hull_dim(self, w: tuple, w2: tuple) -> int:
        return self.layout(w, w2)[1]

    def block(self, v, w, w2, i, j):
        offs, _ = self.layout(w, w2)
        o = offs[(i, j)]
        return v[o:o + self.base.dim(w[j], w2[i])]

    def from_blocks(self, blocks: dict, w, w2):
        """Flat vector from ``{(i, j): vector}``; missing blocks are zero."""
        offs, n = self.layout(w, w2)
        out = [self.field.zero()] * n
        for (i, j), vec in blocks.items():
            o = offs[(i, j)]
            out[o:o + len(vec)] = list(vec)
        return out

    def hull_compose(self, b, a, w0, w1, w2):
        """``[b] o [a]`` for ``a: w0 -> w1`` and ``b: w1 -> w2``."""
        A = self.base
        F = self.field
        blocks = {}
        for i in range(len(w2)):
            for j in range(len(w0)):
                n = A.dim(w0[j], w2[i])
                if not n:
                    continue
                acc = [F.zero()] * n
                for k in range(len(w1)):
                    bik = self.block(b, w1, w2, i, k)
                    akj = self.block(a, w0, w1, k, j)
                    if not bik or not akj:
                        continue
                    t = A.compose(bik, akj, w0[j], w1[k], w2[i])
                    acc = linalg.vec_add(F, acc, t)
                blocks[(i, j)] = acc
        return self.from_blocks(blocks, w0, w2)

    def hull_identity(self, w: tuple):
        return self.from_blocks({(i, i): self.base.ident[x] for i, x in enumerate(w)}, w, w)

    # --- objects ------------------------------------------------------------

    def obj(self, word: Sequence[str], idem=None) -> SatObject:
        word = tuple(word)
        for x in word:
            if x not in self.base.objects:
                raise ObjectMismatch(f"{x!r} is not an object of {self.base.name}")
        if idem is None:
            idem = self.hull_identity(word)
        idem = tuple(idem)
        if len(idem) != self.hull_dim(word, word):
            raise ObjectMismatch("idempotent has the wrong shape")
        if list(self.hull_compose(idem, idem, word, word, word)) != list(idem):
            raise NotIdempotent(f"matrix on {word} is not idempotent")
        return SatObject(word, idem)

    def base_object(self, x: str) -> SatObject:
        return self.obj((x,))

    def zero_object(self) -> SatObject:
        return SatObject((), ())

    def is_identity_object(self, s: SatObject) -> bool:
        return list(s.idem) == self.hull_identity(s.word)

    # --- hom spaces ---------------------------------------------------------

    def hom_basis(self, s: SatObject, t: SatObject):
        """Canonical basis (as hull vectors) of ``e_t . Mat . e_s``."""
        key = (s.key, t.key)
        basis = self._hom.get(key)
        if basis is None:
            n = self.hull_dim(s.word, t.word)
            cols = []
            for c in range(n):
                m = linalg.unit_vector(self.field, n, c)
                cols.append(self.sandwich(t, m, s))
            M = linalg.transpose(cols, n) if cols else []
            piv = linalg.column_pivots(self.field, M, n) if n else []
            basis = [cols[c] for c in piv]
            self._hom[key] = basis
        return basis

    def sandwich(self, t: SatObject, m, s: SatObject):
        """``e_t o m o e_s`` for a hull morphism ``m: word(s) -> word(t)``."""
        left = self.hull_compose(m, list(s.idem), s.word, s.word, t.word)
        return self.hull_compose(list(t.idem), left, s.word, t.word, t.word)

    def dim(self, s: SatObject, t: SatObject) -> int:
        return len(self.hom_basis(s, t))

    def _coordinates(self, s, t):
        key = (s.key, t.key)
        C = self._coords.get(key)
        if C is None:
            C = linalg.Coordinates(self.field, self.hom_basis(s, t), self.hull_dim(s.word, t.word))
            self._coords[key] = C
        return C

    def coords(self, s: SatObject, t: SatObject, m, check: bool = True):
        """Coordinates of the hull morphism ``m`` in the canonical basis."""
        return self._coordinates(s, t).coords(m, check=check)

    def in_hom(self, s: SatObject, t: SatObject, m) -> bool:
        return self._coordinates(s, t).contains(m)

    def to_hull(self, s: SatObject, t: SatObject, c):
        return self._coordinates(s, t).vector(c)

    def compose(self, g, f, s: SatObject, t: SatObject, u: SatObject):
        """``g o f`` in coordinates; ``f: s -> t``, ``g: t -> u``."""
        m = self.hull_compose(self.to_hull(t, u, g), self.to_hull(s, t, f), s.word, t.word, u.word)
        return self.coords(s, u, m, check=False)

    def identity(self, s: SatObject):
        return self.coords(s, s, list(s.idem))

    # --- saturation structure -------------------------------------------------

    def direct_sum(self, *objs: SatObject):
        """``(sum, injections, projections)`` as hull morphisms."""
        word = tuple(itertools.chain.from_iterable(o.word for o in objs))
        starts = []
        n = 0
        for o in objs:
            starts.append(n)
            n += len(o.word)
        blocks = {}
        for o, st in zip(objs, starts):
            for (i, j), vec in self._blocks_of(o.idem, o.word, o.word).items():
                blocks[(st + i, st + j)] = vec
        total = SatObject(word, tuple(self.from_blocks(blocks, word, word)))
        incs, projs = [], []
        for o, st in zip(objs, starts):
            ob = self._blocks_of(o.idem, o.word, o.word)
            incs.append(self.from_blocks({(st + i, j): v for (i, j), v in ob.items()}, o.word, word))
            projs.append(self.from_blocks({(i, st + j): v for (i, j), v in ob.items()}, word, o.word))
        return total, incs, projs

    def _blocks_of(self, v, w, w2):
        return {(i, j): self.block(v, w, w2, i, j) for i in range(len(w2)) for j in range(len(w))
                if self.base.dim(w[j], w2[i])}

    def split(self, s: SatObject, f):
        """Split the idempotent ``f`` (hull vector in ``End(s)``) and its complement.

        Returns ``[(image, inclusion, projection), (complement, ...)]`` with
        ``p o i = 1`` on each piece and ``i1 p1 + i2 p2 = 1_s``.
        """
        F = self.field
        f = list(f)
        if not self.in_hom(s, s, f):
            raise ObjectMismatch("morphism is not an endomorphism of the object")
        if self.hull_compose(f, f, s.word, s.word, s.word) != f:
            raise NotIdempotent("endomorphism is not idempotent")
        g = linalg.vec_sub(F, list(s.idem), f)
        out = []
        for e in (f, g):
            piece = SatObject(s.word, tuple(e))
            out.append((piece, e, e))
        return out

    def materialize(self, objs: Sequence[SatObject], names: Sequence[str] | None = None,
                    name: str = "") -> KCategory:
        """Full subcategory of the view on the given objects, with canonical bases."""
        objs = list(objs)
        names = list(names) if names is not None else [self.name_of(o) for o in objs]
        F = self.field
        hom, comp, ident = {}, {}, {}
        for a, s in zip(names, objs):
            for b, t in zip(names, objs):
                d = self.dim(s, t)
                if d:
                    hom[(a, b)] = d
        for (a, s), (b, t), (c, u) in itertools.product(zip(names, objs), repeat=3):
            if hom.get((a, b)) and hom.get((b, c)) and hom.get((a, c)):
                Bst, Btu = self.hom_basis(s, t), self.hom_basis(t, u)
                comp[(a, b, c)] = [[self.coords(s, u, self.hull_compose(g, f, s.word, t.word, u.word),
                                                check=False)
                                    for f in Bst] for g in Btu]
        for a, s in zip(names, objs):
            ident[a] = self.identity(s) if hom.get((a, a)) else []
        cat = KCategory(F, names, hom, comp, ident, name=name or f"{self.base.name}+")
        cat.sat_objects = dict(zip(names, objs))
        cat.view = self
        return cat

    def name_of(self, s: SatObject) -> str:
        if len(s.word) == 1 and self.is_identity_object(s):
            return s.word[0]
        head = "[" + ",".join(s.word) + "]"
        if self.is_identity_object(s):
            return head
        return head + "{" + ",".join(str(self.field.encode(c)) for c in s.idem) + "}"


# --- materialized envelopes ---------------------------------------------------

def words(objects: Sequence[str], bound: int, include_zero: bool = True):
    out = [()] if include_zero else []
    for n in range(1, bound + 1):
        out.extend(itertools.product(objects, repeat=n))
    return out


def additive_hull(A: KCategory, bound: int, include_zero: bool = True) -> KCategory:
    """Truncation of ``A_+`` to words of length at most ``bound``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    V = SatView(A)
    objs = [V.obj(w) for w in words(A.objects, bound, include_zero)]
    cat = V.materialize(objs, name=f"{A.name}+{bound}")
    cat.bound = bound
    return cat


def functor_plus(F: KFunctor, bound: int, tgt_bound: int | None = None) -> KFunctor:
    """``F_+`` between the hull truncations at ``bound``; acts entrywise."""
    if tgt_bound is not None and tgt_bound != bound:
        raise BoundMismatch(f"source bound {bound} != target bound {tgt_bound}")
    src = additive_hull(F.src, bound)
    tgt = additive_hull(F.tgt, bound)
    VA, VB = src.view, tgt.view
    by_word = {s.word: n for n, s in tgt.sat_objects.items()}
    obj_map = {}
    for n, s in src.sat_objects.items():
        obj_map[n] = by_word[tuple(F(x) for x in s.word)]
    images = {}
    for a, s in src.sat_objects.items():
        for b, t in src.sat_objects.items():
            ws, wt = s.word, t.word
            fs, ft = tuple(F(x) for x in ws), tuple(F(x) for x in wt)
            imgs = []
            for m in VA.hom_basis(s, t):
                blocks = {}
                for i in range(len(wt)):
                    for j in range(len(ws)):
                        if F.src.dim(ws[j], wt[i]):
                            blocks[(i, j)] = F.apply(VA.block(m, ws, wt, i, j), ws[j], wt[i])
                hull = VB.from_blocks(blocks, fs, ft)
                imgs.append(VB.coords(tgt.sat_objects[obj_map[a]], tgt.sat_objects[obj_map[b]], hull))
            images[(a, b)] = imgs
    return KFunctor(src, tgt, obj_map, images, name=f"{F.name}+")


def karoubi(A: KCategory, idempotents: Sequence = ()) -> KCategory:
    """Full subcategory of ``A^natural`` on ``(x, 1_x)`` and the listed ``(x, e)``."""
    V = SatView(A)
    objs = [V.base_object(x) for x in A.objects]
    for x, e in idempotents:
        if A.compose(e, e, x, x, x) != list(e):
            raise NotIdempotent(f"given endomorphism of {x} is not idempotent")
        s = V.obj((x,), e)
        if s not in objs:
            objs.append(s)
    return V.materialize(objs, name=f"{A.name}^")


def idempotent_name(A: KCategory, x: str, e) -> str:
    V = SatView(A)
    return V.name_of(V.obj((x,), e))


# --- functors into saturation views ------------------------------------------

class SatFunctor:
    """A K-functor ``A -> SatView(B)``; images are hull vectors."""

    def __init__(self, src: KCategory, view: SatView, obj_map: dict, images: dict, name: str = ""):
        self.src = src
        self.view = view
        self.obj_map = dict(obj_map)
        self.images = images
        self.name = name

    def __repr__(self):
        return f"SatFunctor({self.name or '?'}: {self.src.name} -> Sat({self.view.base.name}))"

    def __call__(self, x: str) -> SatObject:
        return self.obj_map[x]

    def apply(self, f, x: str, y: str):
        """Hull vector of ``F(f)``."""
        n = self.view.hull_dim(self.obj_map[x].word, self.obj_map[y].word)
        return linalg.lincomb(self.field, f, self.images.get((x, y), []), n)

    @property
    def field(self):
        return self.src.field

    @classmethod
    def from_kfunctor(cls, F: KFunctor, view: SatView | None = None) -> "SatFunctor":
        """``iota_B o F`` for an ordinary functor, or a functor into a materialized view."""
        sat = getattr(F.tgt, "sat_objects", None)
        if sat is not None:
            V = F.tgt.view if view is None else view
            obj_map = {x: sat[F(x)] for x in F.src.objects}
            images = {}
            for (x, y), vs in F.images.items():
                images[(x, y)] = [V.to_hull(obj_map[x], obj_map[y], v) for v in vs]
            return cls(F.src, V, obj_map, images, name=F.name)
        V = view or SatView(F.tgt)
        obj_map = {x: V.base_object(F(x)) for x in F.src.objects}
        images = {k: [list(v) for v in vs] for k, vs in F.images.items()}
        return cls(F.src, V, obj_map, images, name=F.name)

    def image_objects(self):
        out = []
        for x in self.src.objects:
            s = self.obj_map[x]
            if s not in out:
                out.append(s)
        return out

    def as_kfunctor(self, extra: Sequence[SatObject] = ()) -> KFunctor:
        """Corestriction to the materialized full subcategory on the image (plus ``extra``)."""
        objs = self.image_objects()
        for s in extra:
            if s not in objs:
                objs.append(s)
        tgt = self.view.materialize(objs)
        return self.into(tgt)

    def into(self, tgt: KCategory) -> KFunctor:
        V = self.view
        names = {s: n for n, s in tgt.sat_objects.items()}
        obj_map = {x: names[self.obj_map[x]] for x in self.src.objects}
        images = {}
        for x in self.src.objects:
            for y in self.src.objects:
                s, t = self.obj_map[x], self.obj_map[y]
                images[(x, y)] = [V.coords(s, t, v) for v in self.images.get((x, y), [])]
        return KFunctor(self.src, tgt, obj_map, images, name=self.name)

    def validate(self) -> list[str]:
        V = self.view
        problems = []
        for x in self.src.objects:
            for y in self.src.objects:
                for v in self.images.get((x, y), []):
                    if not V.in_hom(self.obj_map[x], self.obj_map[y], v):
                        problems.append(f"image of a morphism {x}->{y} is outside the hom space")
                        return problems
        return validate_functor(self.as_kfunctor())


def iota(A: KCategory, view: SatView | None = None) -> SatFunctor:
    """Canonical embedding ``A -> A+natural``, ``x -> (x, 1_x)``."""
    V = view or SatView(A)
    obj_map = {x: V.base_object(x) for x in A.objects}
    images = {(x, y): A.basis(x, y) for x in A.objects for y in A.objects}
    return SatFunctor(A, V, obj_map, images, name=f"iota_{A.name}")


class SatExtension:
    """Extension of ``G: A -> Sat(C)`` to ``Sat(A) -> Sat(C)``, computed on demand."""

    def __init__(self, G: SatFunctor, src_view: SatView | None = None):
        self.G = G
        self.src_view = src_view or SatView(G.src)

    def map_hull(self, m, w, w2):
        """Image of a hull morphism ``w -> w2`` over ``A`` as a hull morphism over ``C``."""
        G, VA, VC = self.G, self.src_view, self.G.view
        gw = [G(x).word for x in w]
        gw2 = [G(y).word for y in w2]
        W = tuple(itertools.chain.from_iterable(gw))
        W2 = tuple(itertools.chain.from_iterable(gw2))
        st = [sum(len(u) for u in gw[:j]) for j in range(len(w))]
        st2 = [sum(len(u) for u in gw2[:i]) for i in range(len(w2))]
        blocks = {}
        for i in range(len(w2)):
            for j in range(len(w)):
                if not G.src.dim(w[j], w2[i]):
                    continue
                img = G.apply(VA.block(m, w, w2, i, j), w[j], w2[i])
                for (a, b), v in VC._blocks_of(img, gw[j], gw2[i]).items():
                    blocks[(st2[i] + a, st[j] + b)] = v
        return VC.from_blocks(blocks, W, W2), W, W2

    def obj(self, s: SatObject) -> SatObject:
        e, W, _ = self.map_hull(list(s.idem), s.word, s.word)
        return SatObject(W, tuple(e))

    def morphism(self, m, s: SatObject, t: SatObject):
        """Hull image of a hull morphism ``s -> t``."""
        return self.map_hull(m, s.word, t.word)[0]


def extend_to_saturation(G: SatFunctor) -> SatExtension:
    return SatExtension(G)


def compose_sat(H: SatFunctor, G: SatFunctor) -> SatFunctor:
    """``H~ o G`` where ``H~`` is the extension of ``H`` to the saturation of its source."""
    if G.view.base is not H.src and G.view.base.objects != H.src.objects:
        raise ObjectMismatch("functors are not composable")
    ext = SatExtension(H, G.view)
    obj_map = {x: ext.obj(G(x)) for x in G.src.objects}
    images = {}
    for x in G.src.objects:
        for y in G.src.objects:
            images[(x, y)] = [ext.morphism(v, G(x), G(y)) for v in G.images.get((x, y), [])]
    return SatFunctor(G.src, H.view, obj_map, images, name=f"{H.name}o{G.name}")


def common_target(F0: SatFunctor, F1: SatFunctor):
    """Materialize both functors into one full subcategory of the shared view."""
    objs = F0.image_objects()
    for s in F1.image_objects():
        if s not in objs:
            objs.append(s)
    tgt = F0.view.materialize(objs)
    return F0.into(tgt), F1.into(tgt)
