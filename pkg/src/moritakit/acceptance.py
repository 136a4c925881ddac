"""The acceptance suite: thirteen seeded checks with runtime limits.

Each check returns a :class:`Result`; the summary written by :func:`run_suite`
depends only on the seed (timings are kept out of it).
"""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import linalg

SUITES = {
    "core": (2, 5, 6, 9),
    "morita": (1, 2, 3, 4, 5, 12),
    "brauer": (6, 7, 11),
    "galois": (8, 9, 10, 11, 13),
    "all": tuple(range(1, 14)),
}

LIMITS = {1: 120, 2: 10, 3: 120, 4: 60, 5: 1, 6: 5, 7: 30, 8: 60, 9: 30, 10: 30, 11: 120, 12: 120, 13: 120}

TITLES = {
    1: "Morita decision agrees with the retract oracle",
    2: "corner functor is an equivalence, unit functor is not",
    3: "mapping cylinder factorization",
    4: "pushout mediator commutes and is unique",
    5: "generator categories have the listed hom dimensions",
    6: "Azumaya certification by sandwich rank",
    7: "quaternion Brauer arithmetic and trivialization",
    8: "Galois descent counit is an equivariant bijection",
    9: "dimension of corestricted free modules",
    10: "corestriction is monoidal on free modules",
    11: "corestriction of a matrix algebra is split Azumaya",
    12: "tensor and base change preserve Morita equivalences",
    13: "bimodule calculus and corestriction of tensor products",
}


class UnknownSuite(KeyError):
    pass


@dataclass
class Result:
    number: int
    passed: bool
    detail: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    @property
    def title(self) -> str:
        return TITLES[self.number]

    @property
    def within_time(self) -> bool:
        return self.seconds < LIMITS[self.number]

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number:2d}: {self.title}"

    def report(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "detail": self.detail}


def _rng(seed: int, number: int) -> random.Random:
    return random.Random(seed * 1000 + number)


# --- 1 to 5: categories and Morita theory ----------------------------------------------

def check_1(seed: int, instances: int = 200) -> Result:
    from .envelopes import SatView
    from .morita import additively_generates, retract_oracle
    from .samples import random_category, random_images
    from .scalars import gf
    K = gf(2)
    rng = _rng(seed, 1)
    agree = generating = 0
    mismatches = []
    for i in range(instances):
        A = random_category(K, rng, 2, 2)
        V = SatView(A)
        images = random_images(V, rng)
        fast = bool(additively_generates(images, V))
        slow = retract_oracle(images, V, max_len=3)
        generating += fast
        if fast == slow:
            agree += 1
        else:
            mismatches.append(i)
    return Result(1, agree == instances, {"instances": instances, "agree": agree,
                                          "generating": generating, "mismatches": mismatches})


def corner_functor(p: int, n: int):
    """``K -> karoubi(M_n(K), {1, e_11})`` picking ``(o, e_11)``, and the unit ``K -> M_n(K)``."""
    from .algebras import matrix_algebra, scalar_algebra
    from .envelopes import karoubi
    from .lincat import KFunctor
    from .scalars import gf
    K = gf(p)
    A = matrix_algebra(K, n)
    Acat = A.as_category()
    (o,) = Acat.objects
    e11 = A.basis()[0]
    Kar = karoubi(Acat, [(o, e11)])
    name = next(nm for nm, s in Kar.sat_objects.items() if list(s.idem) == list(e11))
    k = scalar_algebra(K).as_category()
    (ko,) = k.objects
    corner = KFunctor(k, Kar, {ko: name}, {(ko, ko): [Kar.ident[name]]}, name="corner")
    unit = KFunctor(k, Acat, {ko: o}, {(ko, ko): [list(A.unit)]}, name="unit")
    return corner, unit


def check_2(seed: int) -> Result:
    from .morita import is_morita_equivalence
    detail = {}
    ok = True
    for p in (2, 3, 5):
        for n in (2, 3):
            corner, unit = corner_functor(p, n)
            good = is_morita_equivalence(corner)
            bad = is_morita_equivalence(unit)
            violations = list(bad.fully_faithful.violations)
            passed = bool(good) and not bad and bool(violations)
            detail[f"p={p},n={n}"] = {"corner": bool(good), "unit": bool(bad),
                                      "ff_violation": [list(v) for v in violations[:1]]}
            ok &= passed
    return Result(2, ok, detail)


def check_3(seed: int, instances: int = 100) -> Result:
    from .lincat import validate_functor
    from .morita import check_mapping_cylinder, mapping_cylinder
    from .samples import random_functor
    from .scalars import gf
    K = gf(2)
    rng = _rng(seed, 3)
    good = 0
    failures = []
    for i in range(instances):
        F = random_functor(K, rng, 3, 2)
        if validate_functor(F):
            failures.append(i)
            continue
        if check_mapping_cylinder(F, mapping_cylinder(F)):
            good += 1
        else:
            failures.append(i)
    return Result(3, good == instances, {"instances": instances, "passed": good, "failures": failures})


def check_4(seed: int, instances: int = 50) -> Result:
    from .morita import Pushout, sample_cocone
    from .samples import random_functor
    from .scalars import gf
    K = gf(2)
    rng = _rng(seed, 4)
    good = 0
    failures = []
    for i in range(instances):
        F = random_functor(K, rng, 2, 2)
        P = Pushout(F)
        T0, T1 = sample_cocone(P, rng)
        T = P.mediator(T0, T1)
        commutes = P.check_cocone(T0, T1) and P.mediator_commutes(T, T0, T1)
        rk, unknowns = P.uniqueness_rank(T0, T1)
        if commutes and rk == unknowns:
            good += 1
        else:
            failures.append(i)
    return Result(4, good == instances, {"instances": instances, "passed": good, "failures": failures})


def check_5(seed: int) -> Result:
    from .generators import generator_R1, hom_signature, idempotent_monoid, retract_category, sum_category
    from .scalars import gf
    K = gf(2)
    E = idempotent_monoid(K)
    R = retract_category(K)
    S = sum_category(K)
    e_dims = [E.dim("o", "o")]
    r_dims = [R.dim("o", "o"), R.dim("r", "r"), R.dim("o", "r"), R.dim("r", "o")]
    s_dims = [S.dim("o1", "o1"), S.dim("o2", "o2"), S.dim("o1", "o2"), S.dim("o2", "o1"), S.dim("s", "s")]
    # s is the sum of o1 and o2: p_k i_k = 1 and i_1 p_1 + i_2 p_2 = 1_s
    Kf = S.field
    total = S.zero("s", "s")
    sums = True
    for o in ("o1", "o2"):
        i_k, p_k = S.basis(o, "s")[0], S.basis("s", o)[0]
        sums &= S.compose(p_k, i_k, o, "s", o) == S.ident[o]
        total = linalg.vec_add(Kf, total, S.compose(i_k, p_k, "s", o, "s"))
    sums &= total == S.ident["s"]
    # ip splits through r: p o i = 1_r and i o p = ip
    F = generator_R1(K)
    ip = F.images[("o", "o")][1]
    p, i = R.basis("o", "r")[0], R.basis("r", "o")[0]
    splits = (R.compose(p, i, "r", "o", "r") == R.ident["r"]
              and R.compose(i, p, "o", "r", "o") == list(ip))
    ok = e_dims == [2] and r_dims == [2, 1, 1, 1] and s_dims == [1, 1, 0, 0, 2] and splits and sums
    return Result(5, ok, {"E1": e_dims, "R1": r_dims, "S2": s_dims, "ip_splits": splits, "S2_sum": sums,
                          "S2_signature": {f"{x}|{y}": d for (x, y), d in sorted(hom_signature(S).items())}})


# --- 6, 7, 11: Azumaya and Brauer ------------------------------------------------------

def check_6(seed: int) -> Result:
    from .algebras import field_algebra, hamilton_quaternions, matrix_algebra, product_algebra
    from .azumaya import is_azumaya
    from .scalars import GF4, gf
    K2 = gf(2)
    cases = {
        "M2(GF3)": (matrix_algebra(gf(3), 2), True),
        "(-1,-1)_Q": (hamilton_quaternions(), True),
        "GF2xGF2": (product_algebra(K2, 2), False),
        "GF4/GF2": (field_algebra(GF4()), False),
    }
    detail = {}
    ok = True
    for name, (A, expect) in cases.items():
        rep = is_azumaya(A)
        detail[name] = rep.certificate() | {"azumaya": bool(rep)}
        ok &= bool(rep) == expect
        if expect:
            ok &= rep.rank == 16
    return Result(6, ok, detail)


def check_7(seed: int) -> Result:
    from .algebras import hamilton_quaternions, matrix_algebra
    from .azumaya import check_trivializing, corner_dim, morita_trivialize, sandwich_is_homomorphism, sandwich_map
    from .scalars import QQ, gf
    H = hamilton_quaternions()
    S = sandwich_map(H)
    bij = linalg.rank(QQ, S, 16) == 16
    hom = sandwich_is_homomorphism(H)
    M2 = matrix_algebra(gf(2), 2)
    t = morita_trivialize(M2)
    e_ok = bool(t) and check_trivializing(M2, t.idempotent) and corner_dim(M2, t.idempotent) == 1
    u = morita_trivialize(H)
    unknown = u.status == "unknown" and u.exhausted
    detail = {"sandwich_bijective": bij, "sandwich_homomorphism": hom, "dim": len(S),
              "M2_witness": [int(c) for c in t.idempotent] if t else None, "M2_method": t.method,
              "H_status": u.status, "H_examined": u.examined, "H_exhausted": u.exhausted}
    return Result(7, bij and hom and e_ok and unknown, detail)


def check_11(seed: int) -> Result:
    from .algebras import matrix_algebra
    from .azumaya import check_trivializing, is_azumaya, morita_trivialize
    from .galois import cor_algebra
    from .scalars import GF4
    E = GF4()
    C = cor_algebra(matrix_algebra(E.field, 2), E)
    az = is_azumaya(C)
    t = morita_trivialize(C)
    ok = C.dim == 16 and bool(az) and bool(t) and check_trivializing(C, t.idempotent)
    return Result(11, ok, {"dim": C.dim, "azumaya": bool(az), "trivialized": t.status,
                           "method": t.method, "examined": t.examined})


# --- 8 to 10, 13: Galois descent and corestriction -------------------------------------

def _extensions():
    from .scalars import GF4, GF9, QI
    return {"GF4/GF2": GF4(), "GF9/GF3": GF9(), "Q(i)/Q": QI()}


def check_8(seed: int, instances: int = 50) -> Result:
    from .galois import random_galois_module, speiser_check
    rng = _rng(seed, 8)
    detail = {}
    ok = True
    for name, E in _extensions().items():
        good = 0
        for _ in range(instances):
            W = random_galois_module(E, rng.randint(1, 4), rng)
            if not W.validate() and speiser_check(W):
                good += 1
        detail[name] = good
        ok &= good == instances
    return Result(8, ok, {"instances": instances, "passed": detail})


def check_9(seed: int) -> Result:
    from .galois import cor_dimension_iso, cor_space, dimension_iso_equivariance
    detail = {}
    ok = True
    for name, E in _extensions().items():
        for m in (1, 2, 3):
            d = cor_space(E, m).dim
            iso = cor_dimension_iso(E, 1, m)
            eq = dimension_iso_equivariance(E, 1, m, iso)
            good = d == m ** E.order and iso.bijective and eq
            detail[f"{name},m={m}"] = {"dim": d, "expected": m ** E.order, "bijective": iso.bijective,
                                       "equivariant": eq}
            ok &= good
    return Result(9, ok, detail)


def check_10(seed: int) -> Result:
    from .galois import cor_monoidal
    from .scalars import GF4
    E = GF4()
    detail = {}
    ok = True
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            M = cor_monoidal(E, a, b)
            n = len(M)
            good = n == (a * b) ** E.order and linalg.rank(E.base, M, n) == n
            detail[f"{a}x{b}"] = {"dim": n, "bijective": good}
            ok &= good
    return Result(10, ok, detail)


def check_13(seed: int, tensor_samples: int = 6, round_trips: int = 20) -> Result:
    from .algebras import bimodule_iso, check_bimodule_iso
    from .galois import cor_tensor_compatibility
    from .morita import bimodule_to_functor, functor_round_trip, functor_to_bimodule
    from .samples import random_bimodule_pair, random_projective_bimodule
    from .scalars import GF4
    E = GF4()
    rng = _rng(seed, 13)
    tensor_ok = 0
    dims = []
    for _ in range(tensor_samples):
        M, N = random_bimodule_pair(E.field, rng)
        tc = cor_tensor_compatibility(M, N, E)
        tensor_ok += bool(tc)
        dims.append(tc.target_dim)
    trips = functor_trips = 0
    for _ in range(round_trips):
        M = random_projective_bimodule(E.field, rng)
        data = bimodule_to_functor(M)
        back = functor_to_bimodule(data.functor)
        iso = bimodule_iso(M, back)
        if iso and check_bimodule_iso(M, back, iso.matrix):
            trips += 1
        eta = functor_round_trip(data.functor)
        if eta and eta.witness.verify() and eta.witness.verify_invertible():
            functor_trips += 1
    ok = tensor_ok == tensor_samples and trips == functor_trips == round_trips
    return Result(13, ok, {"tensor_samples": tensor_samples, "tensor_ok": tensor_ok, "target_dims": dims,
                           "round_trips": round_trips, "round_trips_ok": trips,
                           "functor_round_trips_ok": functor_trips})


# --- 12: stability under tensor and base change ----------------------------------------

def check_12(seed: int, instances: int = 30) -> Result:
    from .lincat import identity_functor, scalar_extension_functor, tensor_functor
    from .morita import is_morita_equivalence
    from .samples import random_category, random_morita_equivalence
    from .scalars import GF4, gf
    K = gf(2)
    E = GF4()
    rng = _rng(seed, 12)
    tensor_ok = base_ok = 0
    for _ in range(instances):
        F = random_morita_equivalence(K, rng, 2, 2)
        C = random_category(K, rng, 2, 1)
        tensor_ok += bool(is_morita_equivalence(tensor_functor(identity_functor(C), F)))
        base_ok += bool(is_morita_equivalence(scalar_extension_functor(F, E)))
    ok = tensor_ok == base_ok == instances
    return Result(12, ok, {"instances": instances, "tensor": tensor_ok, "base_change": base_ok})


CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6, 7: check_7,
          8: check_8, 9: check_9, 10: check_10, 11: check_11, 12: check_12, 13: check_13}


def run_check(number: int, seed: int = 0) -> Result:
    t = time.perf_counter()
    try:
        res = CHECKS[number](seed)
    except Exception as exc:  # a crash is a failed criterion, reported as such
        res = Result(number, False, {"error": f"{type(exc).__name__}: {exc}"})
    res.seconds = time.perf_counter() - t
    return res


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MORITAKIT_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(suite: str = "all", seed: int = 0, threads: int | None = None) -> list[Result]:
    if suite not in SUITES:
        raise UnknownSuite(suite)
    numbers = SUITES[suite]
    threads = threads or _threads()
    if threads > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(numbers))) as pool:
            results = list(pool.map(run_check, numbers, [seed] * len(numbers)))
    else:
        results = [run_check(n, seed) for n in numbers]
    return sorted(results, key=lambda r: r.number)


def summary(results, suite: str, seed: int) -> dict:
    return {"suite": suite, "seed": seed, "passed": all(r.passed for r in results),
            "criteria": [r.report() for r in results]}
