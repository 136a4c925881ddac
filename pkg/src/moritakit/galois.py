"""Galois descent and the corestriction functor for a finite Galois extension L/K.

Vectors of the L-tensor power ``T(V) = (x)_sigma ^sigma V`` of ``V = L^d`` are
stored on their K-underlying space: L-coordinate ``J`` (a function ``G -> [d]``
written as a tuple in group order, ordered lexicographically) occupies the K
slots ``J * n ... J * n + n - 1``. A pure tensor ``(x)_sigma v_sigma`` has
coordinates ``c_J = prod_sigma sigma(v_{sigma, J(sigma)})``, and ``tau`` acts by
``(tau w)_I = tau(w_J)`` with ``J(s) = I(tau s)``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebras import Algebra, Bimodule, InvalidAlgebra, tensor_over
from .lincat import InvalidCategory, KCategory, validate_category
from .scalars import GaloisExtension


class IndexOutOfRange(IndexError):
    pass


class ExtensionMismatch(ValueError):
    pass


def _check_index(E: GaloisExtension, s: int):
    if not 0 <= s < E.order:
        raise IndexOutOfRange(f"group index {s} out of range for |G| = {E.order}")


def _block_diag(K, blocks):
    n = sum(len(b) for b in blocks)
    out = [[K.zero()] * n for _ in range(n)]
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[o + i][o:o + len(row)] = list(row)
        o += len(b)
    return out


def l_to_k(E: GaloisExtension, v):
    """K-underlying coordinates of an L-vector."""
    return [c for x in v for c in x]


def k_to_l(E: GaloisExtension, w):
    n = E.n
    return [tuple(w[i * n:(i + 1) * n]) for i in range(len(w) // n)]


# --- L-modules and Galois modules ------------------------------------------------

@dataclass(frozen=True)
class LModule:
    """``L^dim``, with L acting through ``sigma_twist^{-1}``."""

    ext: GaloisExtension
    dim: int
    twist_index: int = 0

    @property
    def kdim(self) -> int:
        return self.dim * self.ext.n

    def scalar_matrix(self, x):
        """K-matrix of ``v -> x . v`` in the (possibly twisted) structure."""
        E = self.ext
        y = E.apply(E.inverse[self.twist_index], x)
        return _block_diag(E.base, [E.field.mult_matrix(y)] * self.dim)


def twist(V: LModule, s: int) -> LModule:
    """``^sigma V``: same K-space, ``x . v = sigma^{-1}(x) v``."""
    _check_index(V.ext, s)
    return LModule(V.ext, V.dim, V.ext.mul_table[s][V.twist_index])


class GaloisModule:
    """An L-vector space ``L^dim`` with a skew-linear G-action (K-matrices)."""

    def __init__(self, ext: GaloisExtension, dim: int, action):
        self.ext = ext
        self.dim = dim
        self.action = [[list(r) for r in M] for M in action]

    @property
    def kdim(self):
        return self.dim * self.ext.n

    @classmethod
    def standard(cls, ext: GaloisExtension, dim: int) -> "GaloisModule":
        return cls(ext, dim, [_block_diag(ext.base, [g] * dim) for g in ext.group])

    def validate(self) -> list[str]:
        E = self.ext
        K = E.base
        problems = []
        if len(self.action) != E.order:
            return ["one action matrix per group element is required"]
        for s in range(E.order):
            for t in range(E.order):
                if linalg.mat_mul(K, self.action[s], self.action[t]) != self.action[E.mul_table[s][t]]:
                    problems.append(f"group law fails at ({s},{t})")
                    return problems
        n = E.n
        basis_L = [tuple(K.one() if t == i else K.zero() for t in range(n)) for i in range(n)]
        V = LModule(E, self.dim)
        for s in range(E.order):
            for x in basis_L:
                lhs = linalg.mat_mul(K, self.action[s], V.scalar_matrix(x))
                rhs = linalg.mat_mul(K, V.scalar_matrix(E.apply(s, x)), self.action[s])
                if lhs != rhs:
                    problems.append(f"action of sigma_{s} is not skew-linear")
                    return problems
        return problems


def random_galois_module(ext: GaloisExtension, dim: int, rng: random.Random) -> GaloisModule:
    """``g sigma g^{-1}`` for the standard action and a random L-linear invertible ``g``."""
    K, L = ext.base, ext.field
    while True:
        A = [[L.random(rng) for _ in range(dim)] for _ in range(dim)]
        G = _l_matrix_to_k(ext, A)
        Gi = linalg.inverse(K, G)
        if Gi is not None:
            break
    std = GaloisModule.standard(ext, dim)
    action = [linalg.mat_mul(K, linalg.mat_mul(K, G, a), Gi) for a in std.action]
    return GaloisModule(ext, dim, action)


def _l_matrix_to_k(ext: GaloisExtension, A):
    """K-matrix of the L-linear map with L-matrix ``A``."""
    K, L = ext.base, ext.field
    n = ext.n
    rows = len(A)
    cols = len(A[0]) if A else 0
    out = [[K.zero()] * (cols * n) for _ in range(rows * n)]
    for i in range(rows):
        for j in range(cols):
            M = L.mult_matrix(A[i][j])
            for a in range(n):
                for b in range(n):
                    out[i * n + a][j * n + b] = M[a][b]
    return out


def fixed_points(W: GaloisModule):
    """K-basis of ``W^G`` (pivot convention)."""
    K = W.ext.base
    I = linalg.identity(K, W.kdim)
    rows = [r for M in W.action[1:] for r in linalg.mat_sub(K, M, I)]
    if not rows:
        return [linalg.unit_vector(K, W.kdim, i) for i in range(W.kdim)]
    return linalg.nullspace(K, rows, W.kdim)


def counit_matrix(W: GaloisModule, fixed=None):
    """``L (x)_K W^G -> W``, ``l (x) w -> l w``; column ``c * r + k`` is ``b_c . f_k``."""
    E = W.ext
    K = E.base
    fixed = fixed_points(W) if fixed is None else fixed
    V = LModule(E, W.dim)
    cols = []
    for c in range(E.n):
        bc = tuple(K.one() if t == c else K.zero() for t in range(E.n))
        S = V.scalar_matrix(bc)
        for f in fixed:
            cols.append(linalg.mat_vec(K, S, f))
    return linalg.transpose(cols, W.kdim)


@dataclass
class DescentCheck:
    fixed_dim: int
    bijective: bool
    equivariant: bool

    def __bool__(self):
        return self.bijective and self.equivariant


def speiser_check(W: GaloisModule) -> DescentCheck:
    E = W.ext
    K = E.base
    fixed = fixed_points(W)
    C = counit_matrix(W, fixed)
    r = len(fixed)
    N = E.n * r
    bij = N == W.kdim and linalg.rank(K, C, N) == N
    eq = True
    Ir = linalg.identity(K, r)
    for s in range(E.order):
        lhs = linalg.mat_mul(K, W.action[s], C)
        rhs = linalg.mat_mul(K, C, linalg.kron(K, E.group[s], Ir))
        if lhs != rhs:
            eq = False
            break
    return DescentCheck(r, bij, eq)


# --- the tensor power and its fixed points --------------------------------------------

def _index(J, d):
    i = 0
    for j in J:
        i = i * d + j
    return i


def _functions(d: int, g: int):
    return list(itertools.product(range(d), repeat=g))


class CorSpace:
    """``Cor(L^d) = T(L^d)^G`` with its canonical K-basis."""

    def __init__(self, ext: GaloisExtension, d: int):
        self.ext = ext
        self.d = d
        g = ext.order
        self.N = d ** g
        self.funcs = _functions(d, g)
        self.kdim_T = self.N * ext.n
        self._action = None
        self.basis = self._fixed()
        self.dim = len(self.basis)
        self.free = self._free_columns()

    def permutation(self, t: int):
        """``perm[I] = J`` with ``(tau w)_I = tau(w_J)``."""
        E = self.ext
        mul = E.mul_table
        out = []
        for I in self.funcs:
            J = tuple(I[mul[t][s]] for s in range(E.order))
            out.append(_index(J, self.d))
        return out

    def act(self, t: int, w):
        """``tau . w`` on a K-underlying T-vector."""
        E = self.ext
        n = E.n
        perm = self.permutation(t)
        out = []
        for I in range(self.N):
            J = perm[I]
            out.extend(E.apply(t, tuple(w[J * n:(J + 1) * n])))
        return out

    def action_matrix(self, t: int):
        E = self.ext
        K = E.base
        n = E.n
        M = [[K.zero()] * self.kdim_T for _ in range(self.kdim_T)]
        g = E.group[t]
        for I, J in enumerate(self.permutation(t)):
            for a in range(n):
                for b in range(n):
                    M[I * n + a][J * n + b] = g[a][b]
        return M

    def _fixed(self):
        E = self.ext
        K = E.base
        rows = []
        for t in range(1, E.order):
            M = self.action_matrix(t)
            for i in range(self.kdim_T):
                M[i][i] = K.sub(M[i][i], K.one())
            rows.extend(M)
        if not rows:
            return [linalg.unit_vector(K, self.kdim_T, i) for i in range(self.kdim_T)]
        return linalg.nullspace(K, rows, self.kdim_T)

    def _free_columns(self):
        # pivot convention: each basis vector has a 1 at its own free column, 0 at the others'
        K = self.ext.base
        return [next(i for i, v in enumerate(b) if v == K.one() and
                     all(K.is_zero(o[i]) for o in self.basis if o is not b)) for b in self.basis]

    def coords(self, w):
        """Coordinates of a fixed T-vector."""
        return [w[c] for c in self.free]

    def vector(self, c):
        return linalg.lincomb(self.ext.base, c, self.basis, self.kdim_T)

    def pure(self, vs: Sequence):
        """T-vector of ``(x)_sigma vs[sigma]`` (L-vectors, one per group element)."""
        E = self.ext
        L = E.field
        out = []
        for J in self.funcs:
            c = L.one()
            for s, j in enumerate(J):
                c = L.mul(c, E.apply(s, vs[s][j]))
            out.extend(c)
        return out


_spaces: dict = {}


def cor_space(ext: GaloisExtension, d: int) -> CorSpace:
    key = (id(ext), d)
    sp = _spaces.get(key)
    if sp is None or sp.ext is not ext:
        sp = CorSpace(ext, d)
        _spaces[key] = sp
    return sp


def cor_module(V: LModule | int, ext: GaloisExtension | None = None) -> CorSpace:
    if isinstance(V, LModule):
        return cor_space(V.ext, V.dim)
    return cor_space(ext, V)


def conjugate_tensor(ext: GaloisExtension, terms: dict, arity: int):
    """Sparse ``(x)_sigma sigma(c)`` of a multilinear L-tensor.

    ``terms`` maps index tuples ``(out, in_1, ..., in_k)`` to L-coefficients; the
    result maps ``(I, J_1, ..., J_k)`` (tuples of functions) to products
    ``prod_sigma sigma(c[I(sigma), J_1(sigma), ...])``.
    """
    E = ext
    L = E.field
    items = list(terms.items())
    conj = [[(key, E.apply(s, c)) for key, c in items] for s in range(E.order)]
    out = {}
    for combo in itertools.product(*conj):
        c = L.one()
        for _, v in combo:
            c = L.mul(c, v)
        if L.is_zero(c):
            continue
        key = tuple(tuple(k[a] for k, _ in combo) for a in range(arity + 1))
        out[key] = L.add(out[key], c) if key in out else c
    return out


def _apply_multilinear(ext, T: dict, dims_out: int, vecs, dims_in):
    """Evaluate a conjugate tensor on T-vectors (K-underlying) ``vecs``."""
    L = ext.field
    n = ext.n
    out = [L.zero()] * (dims_out ** ext.order)
    for key, c in T.items():
        I = key[0]
        acc = c
        for J, v, d in zip(key[1:], vecs, dims_in):
            j = _index(J, d)
            x = tuple(v[j * n:(j + 1) * n])
            if L.is_zero(x):
                acc = None
                break
            acc = L.mul(acc, x)
        if acc is None:
            continue
        i = _index(I, dims_out)
        out[i] = L.add(out[i], acc)
    return [c for x in out for c in x]


def cor_map(ext: GaloisExtension, A):
    """``Cor(f)`` for an L-matrix ``A: L^m -> L^k`` as a K-matrix ``Cor(L^m) -> Cor(L^k)``."""
    k = len(A)
    m = len(A[0]) if A else 0
    L = ext.field
    terms = {(i, j): A[i][j] for i in range(k) for j in range(m) if not L.is_zero(A[i][j])}
    T = conjugate_tensor(ext, terms, 1)
    src, tgt = cor_space(ext, m), cor_space(ext, k)
    cols = [tgt.coords(_apply_multilinear(ext, T, k, [b], [m])) for b in src.basis]
    return linalg.transpose(cols, tgt.dim)


def cor_monoidal(ext: GaloisExtension, a: int, b: int, other: GaloisExtension | None = None):
    """Matrix of ``Cor(L^a) (x)_K Cor(L^b) -> Cor(L^a (x)_L L^b)``; column ``k * dim_b + l``."""
    if other is not None and other is not ext:
        raise ExtensionMismatch("modules live over different extensions")
    L = ext.field
    Va, Vb, Vab = cor_space(ext, a), cor_space(ext, b), cor_space(ext, a * b)
    fa, fb = Va.funcs, Vb.funcs
    cols = []
    for x in Va.basis:
        xs = k_to_l(ext, x)
        for y in Vb.basis:
            ys = k_to_l(ext, y)
            z = [L.zero()] * Vab.N
            for J, xv in zip(fa, xs):
                if L.is_zero(xv):
                    continue
                for J2, yv in zip(fb, ys):
                    if L.is_zero(yv):
                        continue
                    K2 = tuple(j * b + j2 for j, j2 in zip(J, J2))
                    z[_index(K2, a * b)] = L.mul(xv, yv)
            cols.append(Vab.coords(l_to_k(ext, z)))
    return linalg.transpose(cols, Vab.dim)


@dataclass
class DimensionIso:
    matrix: list
    orbits: list  # (representative, members in lex order, fixed-field basis)
    src_dim: int
    tgt_dim: int
    rank: int

    @property
    def bijective(self):
        return self.src_dim == self.tgt_dim == self.rank


def _orbits(ext: GaloisExtension, m: int):
    """Orbits of ``f -> f o l_tau`` on functions ``G -> [m]``, in lexicographic order."""
    funcs = _functions(m, ext.order)
    seen = set()
    out = []
    for f in funcs:
        if f in seen:
            continue
        members = set()
        stab = []
        for t in range(ext.order):
            g = tuple(f[ext.mul_table[t][s]] for s in range(ext.order))
            members.add(g)
            if g == f:
                stab.append(t)
        seen |= members
        out.append((f, sorted(members), stab))
    return out


def _fixed_field(ext: GaloisExtension, stab):
    K = ext.base
    n = ext.n
    I = linalg.identity(K, n)
    rows = [r for t in stab if t != 0 for r in linalg.mat_sub(K, ext.group[t], I)]
    if not rows:
        return [tuple(linalg.unit_vector(K, n, i)) for i in range(n)]
    return [tuple(v) for v in linalg.nullspace(K, rows, n)]


def cor_dimension_iso(ext: GaloisExtension, d: int, m: int) -> DimensionIso:
    """``Cor((L^d)^m) -> Cor(L^d)^{m^|G|}``, components indexed by functions ``G -> [m]``.

    First the index permutation ``(x)_sigma (v_{sigma,i})_i -> ((x)_sigma
    v_{sigma,f(sigma)})_f``; then each orbit of ``G`` on functions with
    representative ``f0`` and stabilizer ``H`` contributes the decomposition of
    the ``f0``-component along a K-basis of the fixed field ``L^H`` (one Cor(L^d)
    summand per orbit member).
    """
    E = ext
    K, L = E.base, E.field
    big = cor_space(E, d * m)
    small = cor_space(E, d)
    funcs_m = _functions(m, E.order)
    fpos = {f: k for k, f in enumerate(funcs_m)}
    orbits = _orbits(E, m)
    r = small.dim
    total = len(funcs_m) * r
    cols = []
    orbit_data = []
    for f0, members, stab in orbits:
        orbit_data.append((f0, members, _fixed_field(E, stab)))
    for w in big.basis:
        wl = k_to_l(E, w)
        out = [K.zero()] * total
        for f0, members, ells in orbit_data:
            # f0-component: coordinates (i, j) of V^m with block index i == f0(sigma)
            comp = []
            for J in small.funcs:
                Jbig = tuple(f0[s] * d + J[s] for s in range(E.order))
                comp.extend(wl[_index(Jbig, d * m)])
            # comp = sum_k ell_k * y_k with y_k in Cor(L^d)
            gen = []
            for ell in ells:
                for b in small.basis:
                    bl = k_to_l(E, b)
                    gen.append([c for x in bl for c in L.mul(ell, x)])
            M = linalg.transpose(gen, len(comp))
            sol = linalg.solve(K, M, comp, len(gen))
            if sol is None:
                raise ArithmeticError("orbit component is not in the expected span")
            for k, f in enumerate(members):
                o = fpos[f] * r
                out[o:o + r] = sol[k * r:(k + 1) * r]
        cols.append(out)
    M = linalg.transpose(cols, total)
    rk = linalg.rank(K, M, big.dim) if cols else 0
    return DimensionIso(M, orbit_data, big.dim, total, rk)


def dimension_iso_equivariance(ext: GaloisExtension, d: int, m: int, iso: DimensionIso | None = None) -> bool:
    """Extend the iso L-linearly through the counits and compare with the diagonal action."""
    E = ext
    K = E.base
    iso = iso or cor_dimension_iso(E, d, m)
    big, small = cor_space(E, d * m), cor_space(E, d)
    nf = m ** E.order

    def counit(space):
        cols = []
        for c in range(E.n):
            bc = tuple(K.one() if t == c else K.zero() for t in range(E.n))
            cols.extend(_scale_T(E, bc, b) for b in space.basis)
        return linalg.transpose(cols, space.kdim_T)

    Cb = counit(big)
    Cs = counit(small)
    # L (x) target: counit applied componentwise to each of the nf summands
    r = small.dim
    n = E.n
    tgt_T = nf * small.kdim_T
    cols = []
    for c in range(n):
        for k in range(nf * r):
            f, j = divmod(k, r)
            v = [K.zero()] * tgt_T
            col = [row[c * r + j] for row in Cs]
            v[f * small.kdim_T:(f + 1) * small.kdim_T] = col
            cols.append(v)
    Ct = linalg.transpose(cols, tgt_T)
    L_iso = linalg.kron(K, linalg.identity(K, n), iso.matrix)
    Cb_inv = linalg.inverse(K, Cb)
    if Cb_inv is None:
        return False
    psi = linalg.mat_mul(K, linalg.mat_mul(K, Ct, L_iso), Cb_inv)
    for t in range(E.order):
        src_act = big.action_matrix(t)
        tgt_act = _block_diag(K, [small.action_matrix(t)] * nf)
        if linalg.mat_mul(K, psi, src_act) != linalg.mat_mul(K, tgt_act, psi):
            return False
    return True


def _scale_T(E: GaloisExtension, x, w):
    L = E.field
    return [c for v in k_to_l(E, w) for c in L.mul(x, v)]


# --- algebras, bimodules, categories -------------------------------------------------

def cor_algebra(S: Algebra, ext: GaloisExtension) -> Algebra:
    """Corestriction of an L-algebra: product and unit transported through Cor."""
    if S.field != ext.field:
        raise ExtensionMismatch("algebra is not over the top field of the extension")
    E = ext
    L = E.field
    d = S.dim
    terms = {(k, i, j): S.mult[i][j][k] for i in range(d) for j in range(d) for k in range(d)
             if not L.is_zero(S.mult[i][j][k])}
    T = conjugate_tensor(E, terms, 2)
    sp = cor_space(E, d)
    mult = [[sp.coords(_apply_multilinear(E, T, d, [x, y], [d, d])) for y in sp.basis] for x in sp.basis]
    unit = sp.coords(sp.pure([S.unit] * E.order))
    C = Algebra(E.base, mult, unit, name=f"Cor({S.name})")
    problems = C.validate()
    if problems:
        raise InvalidAlgebra("; ".join(problems))
    return C


def _cor_action(E, mats_by_basis, dim_alg, dim_mod, sp_alg, sp_mod):
    """Action matrices of ``Cor(R)`` on ``Cor(M)`` from L-action matrices ``mats_by_basis``."""
    L = E.field
    terms = {}
    for r, Mr in enumerate(mats_by_basis):
        for i in range(dim_mod):
            for j in range(dim_mod):
                c = Mr[i][j]
                if not L.is_zero(c):
                    terms[(i, r, j)] = c
    T = conjugate_tensor(E, terms, 2)
    out = []
    for a in sp_alg.basis:
        cols = [sp_mod.coords(_apply_multilinear(E, T, dim_mod, [a, m], [dim_alg, dim_mod]))
                for m in sp_mod.basis]
        out.append(linalg.transpose(cols, sp_mod.dim))
    return out


def cor_bimodule(M: Bimodule, ext: GaloisExtension, CR: Algebra | None = None,
                 CS: Algebra | None = None, certify: bool = False) -> Bimodule:
    """Corestricted bimodule; ``certify`` also checks f.g. projectivity over ``Cor(S)``."""
    E = ext
    CR = CR or cor_algebra(M.R, E)
    CS = CS or cor_algebra(M.S, E)
    spR, spS, spM = cor_space(E, M.R.dim), cor_space(E, M.S.dim), cor_space(E, M.dim)
    left = _cor_action(E, M.left, M.R.dim, M.dim, spR, spM)
    right = _cor_action(E, M.right, M.S.dim, M.dim, spS, spM)
    out = Bimodule(CR, CS, spM.dim, left, right, name=f"Cor({M.name})")
    if certify:
        from .morita import NotFinitelyGenerated, NotProjective, bimodule_to_functor
        try:
            bimodule_to_functor(out)
        except NotFinitelyGenerated as exc:
            raise NotProjective(str(exc)) from exc
    return out


@dataclass
class TensorCompatibility:
    ok: bool
    annihilates_relators: bool
    coker_dim: int
    image_rank: int
    target_dim: int

    def __bool__(self):
        return self.ok


def cor_tensor_compatibility(M: Bimodule, N: Bimodule, ext: GaloisExtension) -> TensorCompatibility:
    """``Cor(M) (x)_{Cor S} Cor(N) -> Cor(M (x)_S N)`` is induced and bijective."""
    E = ext
    K, L = E.base, E.field
    CR, CS, CT = cor_algebra(M.R, E), cor_algebra(M.S, E), cor_algebra(N.S, E)
    CM = cor_bimodule(M, E, CR, CS)
    CN = cor_bimodule(N, E, CS, CT)
    bal = tensor_over(M, N)  # over L
    a, b = M.dim, N.dim
    q = [[L.zero()] * (a * b) for _ in range(len(bal.free))]
    for c in range(a * b):
        col = bal.project(linalg.unit_vector(L, a * b, c))
        for r, v in enumerate(col):
            q[r][c] = v
    mono = cor_monoidal(E, a, b)  # Cor(M) (x)_K Cor(N) -> Cor(M (x)_L N)
    Cq = cor_map(E, q) if q else []
    tgt_dim = cor_space(E, len(bal.free)).dim if bal.free else 0
    Phi = linalg.mat_mul(K, Cq, mono) if Cq else []
    # relators of the balanced tensor over Cor(S)
    dM, dN = CM.dim, CN.dim
    rels = []
    for s in range(CS.dim):
        for i in range(dM):
            for j in range(dN):
                v = [K.zero()] * (dM * dN)
                for i2 in range(dM):
                    c = CM.right[s][i2][i]
                    if not K.is_zero(c):
                        v[i2 * dN + j] = K.add(v[i2 * dN + j], c)
                for j2 in range(dN):
                    c = CN.left[s][j2][j]
                    if not K.is_zero(c):
                        v[i * dN + j2] = K.sub(v[i * dN + j2], c)
                rels.append(v)
    kills = all(linalg.is_zero_vec(K, linalg.mat_vec(K, Phi, v)) for v in rels) if Phi else True
    rel_rank = linalg.rank(K, rels, dM * dN) if rels else 0
    coker = dM * dN - rel_rank
    img = linalg.rank(K, Phi, dM * dN) if Phi else 0
    ok = kills and coker == img == tgt_dim
    return TensorCompatibility(ok, kills, coker, img, tgt_dim)


def cor_category(A: KCategory, ext: GaloisExtension) -> KCategory:
    """Same objects; hom spaces and composition corestricted."""
    E = ext
    if A.field != E.field:
        raise ExtensionMismatch("category is not over the top field of the extension")
    L = E.field
    hom, comp, ident = {}, {}, {}
    for x in A.objects:
        for y in A.objects:
            d = A.dim(x, y)
            if d:
                hom[(x, y)] = cor_space(E, d).dim
    for (x, y, z), tab in A.comp.items():
        dxy, dyz, dxz = A.dim(x, y), A.dim(y, z), A.dim(x, z)
        if not (dxy and dyz and dxz):
            continue
        terms = {(k, i, j): tab[i][j][k] for i in range(dyz) for j in range(dxy) for k in range(dxz)
                 if not L.is_zero(tab[i][j][k])}
        T = conjugate_tensor(E, terms, 2)
        sg, sf, so = cor_space(E, dyz), cor_space(E, dxy), cor_space(E, dxz)
        comp[(x, y, z)] = [[so.coords(_apply_multilinear(E, T, dxz, [g, f], [dyz, dxy])) for f in sf.basis]
                           for g in sg.basis]
    for x in A.objects:
        d = A.dim(x, x)
        if d:
            sp = cor_space(E, d)
            ident[x] = sp.coords(sp.pure([A.ident[x]] * E.order))
        else:
            ident[x] = []
    C = KCategory(E.base, A.objects, hom, comp, ident, name=f"Cor({A.name})")
    problems = validate_category(C)
    if problems:
        raise InvalidCategory("; ".join(problems))
    return C
