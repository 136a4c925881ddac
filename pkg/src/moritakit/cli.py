"""Command-line entry point: ``moritakit VERB FILES... [--seed --budget --bound --out]``.

Exit status: 0 success (including a negative verdict), 1 a checked property
fails, 2 invalid input, 3 inconclusive within the budget.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field as dc_field

from . import io, linalg
from .algebras import Algebra, Bimodule, InvalidAlgebra, InvalidBimodule
from .envelopes import BoundMismatch, NotIdempotent, ObjectMismatch, SatFunctor
from .lincat import (InvalidCategory, InvalidPresentation, KCategory, validate_category,
                     validate_functor)
from .scalars import DivisionByZero, InvalidRing, RingMismatch

OK, VIOLATED, INVALID, INCONCLUSIVE = 0, 1, 2, 3

INPUT_ERRORS = (io.FormatError, InvalidCategory, InvalidPresentation, InvalidAlgebra, InvalidBimodule,
                InvalidRing, RingMismatch, DivisionByZero, ObjectMismatch, BoundMismatch, NotIdempotent)


class UsageError(ValueError):
    pass


@dataclass
class Job:
    verb: str
    inputs: list
    seed: int = 0
    budget: int | None = None
    bound: int = 2
    out: str | None = None
    extra: dict = dc_field(default_factory=dict)


# --- loading -----------------------------------------------------------------------

def _load(path: str, want: str | None = None):
    data = io.load(path)
    kind = io.detect(data)
    if want and kind != want:
        raise io.FormatError(f"{path}: expected a {want} file, got a {kind} file")
    return kind, data


def load_category(path: str) -> KCategory:
    _, data = _load(path, "category")
    A = io.category_from_json(data)
    problems = validate_category(A)
    if problems:
        raise InvalidCategory("; ".join(problems))
    return A


def load_functor(path: str):
    _, data = _load(path, "functor")
    F = io.functor_from_json(data)
    problems = F.validate() if isinstance(F, SatFunctor) else validate_functor(F)
    if problems:
        raise InvalidCategory("; ".join(problems))
    return F


def load_algebra(path: str) -> Algebra:
    _, data = _load(path, "algebra")
    A = io.algebra_from_json(data)
    problems = A.validate()
    if problems:
        raise InvalidAlgebra("; ".join(problems))
    return A


def load_bimodule(path: str) -> Bimodule:
    _, data = _load(path, "bimodule")
    M = io.bimodule_from_json(data)
    problems = M.validate()
    if problems:
        raise InvalidBimodule("; ".join(problems))
    return M


def load_extension(path: str):
    _, data = _load(path, "extension")
    return io.extension_from_json(data)


def _need(job: Job, n: int):
    if len(job.inputs) < n:
        raise UsageError(f"{job.verb} needs {n} input file(s)")


# --- verbs ----------------------------------------------------------------------------

def do_validate(job: Job):
    _need(job, 1)
    kind, data = _load(job.inputs[0])
    try:
        if kind == "category":
            problems = validate_category(io.category_from_json(data))
        elif kind == "functor":
            F = io.functor_from_json(data)
            problems = F.validate() if isinstance(F, SatFunctor) else validate_functor(F)
        elif kind == "algebra":
            problems = io.algebra_from_json(data).validate()
        elif kind == "bimodule":
            problems = io.bimodule_from_json(data).validate()
        elif kind == "presentation":
            problems = io.presentation_from_json(data).validate()
        else:
            problems = io.extension_from_json(data).validate()
    except io.FormatError as exc:
        problems = [str(exc)]
    report = {"verb": "validate", "kind": kind, "verdict": not problems, "problems": problems}
    return report, (OK if not problems else VIOLATED)


def do_tensor(job: Job):
    from .lincat import tensor_functor, tensor_product
    _need(job, 2)
    k1, k2 = _load(job.inputs[0])[0], _load(job.inputs[1])[0]
    if k1 != k2:
        raise UsageError("tensor needs two files of the same kind")
    if k1 == "category":
        return io.category_to_json(tensor_product(load_category(job.inputs[0]), load_category(job.inputs[1]))), OK
    if k1 == "algebra":
        return io.algebra_to_json(load_algebra(job.inputs[0]).tensor(load_algebra(job.inputs[1]))), OK
    if k1 == "functor":
        F, G = load_functor(job.inputs[0]), load_functor(job.inputs[1])
        if isinstance(F, SatFunctor) or isinstance(G, SatFunctor):
            raise UsageError("tensor of functors needs plain functors")
        return io.functor_to_json(tensor_functor(F, G)), OK
    raise UsageError(f"cannot tensor {k1} files")


def do_free_cat(job: Job):
    from .lincat import free_kcategory
    _need(job, 1)
    _, data = _load(job.inputs[0], "presentation")
    F = io.ring_of(data)
    C = io.presentation_from_json(data)
    return io.category_to_json(free_kcategory(C, F, name=data.get("name", ""))), OK


def do_additive_hull(job: Job):
    from .envelopes import additive_hull
    _need(job, 1)
    return io.category_to_json(additive_hull(load_category(job.inputs[0]), job.bound)), OK


def _all_idempotents(A: KCategory, budget: int):
    import itertools
    K = A.field
    out = []
    for x in A.objects:
        d = A.dim(x, x)
        if not d or not K.is_finite() or K.order ** d > budget:
            continue
        for v in itertools.product(list(K.elements()), repeat=d):
            v = list(v)
            if A.compose(v, v, x, x, x) == v and v != A.ident[x] and not linalg.is_zero_vec(K, v):
                out.append((x, v))
    return out


def do_karoubi(job: Job):
    from .envelopes import karoubi
    _need(job, 1)
    A = load_category(job.inputs[0])
    if len(job.inputs) > 1:
        data = io.load(job.inputs[1])
        try:
            idems = [(e["object"], [A.field.decode(c) for c in e["idem"]]) for e in data["idempotents"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise io.FormatError(f"bad idempotent list: {exc}") from exc
    else:
        idems = _all_idempotents(A, job.budget or 1 << 12)
    return io.category_to_json(karoubi(A, idems)), OK


def _gen_witness_json(F, rep):
    out = {}
    for y, wit in rep.witnesses.items():
        out[y] = [{"object": io.satobject_to_json(F, s), "f": [F.encode(c) for c in f],
                   "g": [F.encode(c) for c in g]} for s, f, g in wit]
    return out


def do_morita_eq(job: Job):
    from .morita import is_morita_equivalence
    _need(job, 1)
    G = load_functor(job.inputs[0])
    rep = is_morita_equivalence(G)
    K = G.src.field
    report = {
        "verb": "morita-eq",
        "verdict": bool(rep),
        "fully_faithful": bool(rep.fully_faithful),
        "ff_violations": [list(v) for v in rep.fully_faithful.violations],
        "generates": bool(rep.generation),
        "trace_ideal_dims": rep.generation.ideal_dims,
        "missing": rep.generation.missing,
        "witness": _gen_witness_json(K, rep.generation) if rep.generation else {},
        "inputs": {"functor": io.functor_to_json(G)},
    }
    return report, OK


def do_mapping_cylinder(job: Job):
    from .morita import check_mapping_cylinder, mapping_cylinder
    _need(job, 1)
    F = load_functor(job.inputs[0])
    if isinstance(F, SatFunctor):
        raise UsageError("mapping-cylinder needs a plain functor")
    M = mapping_cylinder(F)
    chk = check_mapping_cylinder(F, M)
    report = {
        "verb": "mapping-cylinder",
        "verdict": bool(chk),
        "checks": {k: bool(v) for k, v in vars(chk).items()},
        "category": io.category_to_json(M.category),
        "J": io.functor_to_json(M.J),
        "Q": io.functor_to_json(M.Q),
        "inputs": {"functor": io.functor_to_json(F)},
    }
    return report, OK


def do_cylinder(job: Job):
    from .morita import cylinder_object
    _need(job, 1)
    C = cylinder_object(load_category(job.inputs[0]))
    return {"verb": "cylinder", "category": io.category_to_json(C.category),
            "J1": io.functor_to_json(C.J1), "J2": io.functor_to_json(C.J2), "Q": io.functor_to_json(C.Q)}, OK


def do_saturation_check(job: Job):
    from .morita import saturation_witness_search
    _need(job, 1)
    D = load_category(job.inputs[0])
    K = D.field
    rep = saturation_witness_search(D, budget=job.budget or 1 << 12)
    enc = lambda v: [K.encode(c) for c in v]  # noqa: E731

    def wjson(w):
        return None if w is None else {k: (v if k == "object" else enc(v)) for k, v in w.items()}

    summary = rep.summary()
    missing = summary["splittings_missing"] + summary["direct_sums_missing"] + (rep.zero_object is None)
    if not missing:
        verdict = True
    elif rep.exhaustive:
        verdict = False
    else:
        verdict = "unknown"
    report = {
        "verb": "saturation-check",
        "verdict": verdict,
        "summary": summary,
        "splittings": [{"object": x, "idem": enc(e), "witness": wjson(w)} for x, e, w in rep.splittings],
        "direct_sums": [{"x": x, "y": y, "witness": wjson(w)} for x, y, w in rep.direct_sums],
        "inputs": {"category": io.category_to_json(D)},
    }
    return report, (INCONCLUSIVE if verdict == "unknown" else OK)


def _as_homap(G):
    from .morita import HoMap, ho_from_functor
    if isinstance(G, SatFunctor):
        return HoMap(G.src, G.view.base, G)
    return ho_from_functor(G)


def do_ho_compose(job: Job):
    from .morita import ho_compose, ho_is_iso
    _need(job, 2)
    phi, psi = _as_homap(load_functor(job.inputs[0])), _as_homap(load_functor(job.inputs[1]))
    comp = ho_compose(psi, phi)
    return {"verb": "ho-compose", "functor": io.functor_to_json(comp.rep), "is_iso": ho_is_iso(comp)}, OK


def do_bimodule_to_functor(job: Job):
    from .algebras import bimodule_iso
    from .morita import NotFinitelyGenerated, NotProjective, bimodule_to_functor, functor_to_bimodule
    _need(job, 1)
    M = load_bimodule(job.inputs[0])
    K = M.field
    try:
        data = bimodule_to_functor(M)
    except (NotProjective, NotFinitelyGenerated) as exc:
        return {"verb": "bimodule-to-functor", "verdict": False, "reason": str(exc)}, OK
    back = functor_to_bimodule(data.functor)
    iso = bimodule_iso(M, back, budget=job.budget or 1 << 16, seed=job.seed)
    report = {
        "verb": "bimodule-to-functor",
        "verdict": True,
        "functor": io.functor_to_json(data.functor),
        "round_trip_iso": None if not iso else [[K.encode(c) for c in r] for r in iso.matrix],
        "inputs": {"bimodule": io.bimodule_to_json(M)},
    }
    if iso:
        return report, OK
    return report, (VIOLATED if iso.conclusive else INCONCLUSIVE)


def do_azumaya_check(job: Job):
    from .azumaya import is_azumaya
    _need(job, 1)
    A = load_algebra(job.inputs[0])
    rep = is_azumaya(A)
    return {"verb": "azumaya-check", "verdict": bool(rep), "certificate": rep.certificate(),
            "inputs": {"algebra": io.algebra_to_json(A)}}, OK


def do_brauer_mul(job: Job):
    from .azumaya import NotAzumaya, brauer_mul
    _need(job, 2)
    try:
        C = brauer_mul(load_algebra(job.inputs[0]), load_algebra(job.inputs[1]))
    except NotAzumaya as exc:
        raise InvalidAlgebra(str(exc)) from exc
    return io.algebra_to_json(C), OK


def _trivialize_report(verb, C, res, inputs):
    K = C.field
    report = {
        "verb": verb,
        "verdict": True if res else "unknown",
        "status": res.status,
        "method": res.method,
        "examined": res.examined,
        "exhausted": res.exhausted,
        "idempotent": None if not res else [K.encode(c) for c in res.idempotent],
        "inputs": inputs,
    }
    return report, (OK if res else INCONCLUSIVE)


def do_brauer_trivialize(job: Job):
    from .azumaya import NotAzumaya, morita_trivialize
    _need(job, 1)
    A = load_algebra(job.inputs[0])
    try:
        res = morita_trivialize(A, budget=job.budget or 1 << 17)
    except NotAzumaya as exc:
        raise InvalidAlgebra(str(exc)) from exc
    return _trivialize_report("brauer-trivialize", A, res, {"algebra": io.algebra_to_json(A)})


def do_brauer_eq(job: Job):
    from .azumaya import NotAzumaya, same_brauer_class
    _need(job, 2)
    A, B = load_algebra(job.inputs[0]), load_algebra(job.inputs[1])
    try:
        res = same_brauer_class(A, B, budget=job.budget or 1 << 17)
    except NotAzumaya as exc:
        raise InvalidAlgebra(str(exc)) from exc
    C = A.tensor(B.opposite())
    return _trivialize_report("brauer-eq", C, res, {"A": io.algebra_to_json(A), "B": io.algebra_to_json(B)})


def do_base_change(job: Job):
    from .lincat import scalar_extension, scalar_extension_functor
    _need(job, 2)
    E = load_extension(job.inputs[0])
    kind, _ = _load(job.inputs[1])
    if kind == "category":
        return io.category_to_json(scalar_extension(load_category(job.inputs[1]), E)), OK
    if kind == "functor":
        F = load_functor(job.inputs[1])
        if isinstance(F, SatFunctor):
            raise UsageError("base-change needs a plain functor")
        return io.functor_to_json(scalar_extension_functor(F, E)), OK
    if kind == "algebra":
        A = load_algebra(job.inputs[1])
        if A.field != E.base:
            raise RingMismatch("algebra is not over the base field of the extension")
        return io.algebra_to_json(A.extend_scalars(E.embed, E.field)), OK
    raise UsageError(f"cannot base-change a {kind} file")


def _module_dim(arg: str) -> int:
    try:
        return int(arg)
    except ValueError:
        data = io.load(arg)
        try:
            return int(data["dim"])
        except (KeyError, TypeError, ValueError) as exc:
            raise io.FormatError(f"bad module file: {exc}") from exc


def do_cor_module(job: Job):
    from .galois import cor_space
    _need(job, 2)
    E = load_extension(job.inputs[0])
    d = _module_dim(job.inputs[1])
    if d < 0:
        raise io.FormatError("dimension must be non-negative")
    sp = cor_space(E, d)
    K = E.base
    return {"verb": "cor-module", "ring": K.spec(), "dim_L": d, "dim": sp.dim,
            "basis": [[K.encode(c) for c in b] for b in sp.basis]}, OK


def do_cor_algebra(job: Job):
    from .galois import cor_algebra
    _need(job, 2)
    E = load_extension(job.inputs[0])
    return io.algebra_to_json(cor_algebra(load_algebra(job.inputs[1]), E)), OK


def do_cor_category(job: Job):
    from .galois import cor_category
    _need(job, 2)
    E = load_extension(job.inputs[0])
    return io.category_to_json(cor_category(load_category(job.inputs[1]), E)), OK


def do_acceptance(job: Job):
    from .acceptance import SUITES, run_suite, summary
    suite = job.inputs[0] if job.inputs else "all"
    seed = int(job.inputs[1]) if len(job.inputs) > 1 else job.seed
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    results = run_suite(suite, seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    rep = summary(results, suite, seed)
    return rep, (OK if rep["passed"] else VIOLATED)


def do_verify_witness(job: Job):
    from .verify import verify_report
    _need(job, 1)
    data = io.load(job.inputs[0])
    ok, notes = verify_report(data)
    return {"verb": "verify-witness", "checked": data.get("verb"), "verdict": ok, "notes": notes}, \
        (OK if ok else VIOLATED)


VERBS = {
    "validate": do_validate,
    "tensor": do_tensor,
    "free-cat": do_free_cat,
    "additive-hull": do_additive_hull,
    "karoubi": do_karoubi,
    "morita-eq": do_morita_eq,
    "mapping-cylinder": do_mapping_cylinder,
    "cylinder": do_cylinder,
    "saturation-check": do_saturation_check,
    "ho-compose": do_ho_compose,
    "bimodule-to-functor": do_bimodule_to_functor,
    "azumaya-check": do_azumaya_check,
    "brauer-mul": do_brauer_mul,
    "brauer-trivialize": do_brauer_trivialize,
    "brauer-eq": do_brauer_eq,
    "base-change": do_base_change,
    "cor-module": do_cor_module,
    "cor-algebra": do_cor_algebra,
    "cor-category": do_cor_category,
    "acceptance": do_acceptance,
    "verify-witness": do_verify_witness,
}


def run(job: Job) -> int:
    """Execute a job, write its output, and return the exit status."""
    try:
        result, status = VERBS[job.verb](job)
    except (UsageError, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    text = io.dumps(result)
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moritakit",
                                description="Linear categories, Morita equivalence, Brauer classes and descent.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("inputs", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    return run(Job(args.verb, args.inputs, args.seed, args.budget, args.bound, args.out))


if __name__ == "__main__":
    raise SystemExit(main())
