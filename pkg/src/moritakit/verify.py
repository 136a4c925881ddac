"""Re-check the witnesses stored in CLI reports without repeating any search."""
from __future__ import annotations

from . import io, linalg
from .envelopes import SatFunctor, SatView


def _dec(F, v):
    return [F.decode(c) for c in v]


def _verify_morita(data):
    from .morita import is_fully_faithful, verify_generation_witness
    G = io.functor_from_json(data["inputs"]["functor"])
    notes = []
    if not data.get("verdict"):
        notes.append("negative verdict: nothing to certify")
        return True, notes
    ff = bool(is_fully_faithful(G))
    if not ff:
        notes.append("functor is not fully faithful")
    V = G.view if isinstance(G, SatFunctor) else SatView(G.tgt)
    F = V.field
    ok = ff
    for y in V.base.objects:
        wit = [(io.satobject_from_json(F, w["object"]), _dec(F, w["f"]), _dec(F, w["g"]))
               for w in data["witness"].get(y, [])]
        if V.base.dim(y, y) and not verify_generation_witness(V, y, wit):
            notes.append(f"generation witness fails at {y}")
            ok = False
    return ok, notes


def _verify_azumaya(data):
    from .azumaya import sandwich_map
    A = io.algebra_from_json(data["inputs"]["algebra"])
    r = linalg.rank(A.field, sandwich_map(A), A.dim * A.dim) if A.dim else 0
    claimed = data["certificate"]["rank"]
    return r == claimed and (r == A.dim * A.dim) == bool(data["verdict"]), [f"rank {r}"]


def _verify_trivialize(data):
    from .azumaya import check_trivializing
    ins = data["inputs"]
    if "algebra" in ins:
        C = io.algebra_from_json(ins["algebra"])
    else:
        A, B = io.algebra_from_json(ins["A"]), io.algebra_from_json(ins["B"])
        C = A.tensor(B.opposite())
    if data.get("idempotent") is None:
        return True, ["no idempotent claimed"]
    e = _dec(C.field, data["idempotent"])
    ok = check_trivializing(C, e)
    return ok, [] if ok else ["idempotent does not trivialize"]


def _verify_saturation(data):
    D = io.category_from_json(data["inputs"]["category"])
    K = D.field
    notes = []
    ok = True
    for item in data["splittings"]:
        w = item["witness"]
        if w is None:
            continue
        x, r = item["object"], w["object"]
        e, i, p = _dec(K, item["idem"]), _dec(K, w["i"]), _dec(K, w["p"])
        if D.compose(p, i, r, x, r) != D.ident[r] or D.compose(i, p, x, r, x) != e:
            ok = False
            notes.append(f"splitting witness fails at {x}")
    for item in data["direct_sums"]:
        w = item["witness"]
        if w is None:
            continue
        x, y, s = item["x"], item["y"], w["object"]
        i1, p1, i2, p2 = (_dec(K, w[k]) for k in ("i1", "p1", "i2", "p2"))
        total = [K.zero()] * D.dim(s, s)
        for a, i, p in ((x, i1, p1), (y, i2, p2)):
            if D.dim(a, a):
                if D.compose(p, i, a, s, a) != D.ident[a]:
                    ok = False
                total = linalg.vec_add(K, total, D.compose(i, p, s, a, s))
        if total != D.ident[s]:
            ok = False
            notes.append(f"direct sum witness fails at ({x}, {y})")
    return ok, notes


def _verify_cylinder(data):
    from .lincat import compose_functors
    from .morita import _same_functor
    F = io.functor_from_json(data["inputs"]["functor"])
    Bt = io.category_from_json(data["category"])
    J = io.functor_from_json(data["J"], src=F.src, tgt=Bt)
    Q = io.functor_from_json(data["Q"], src=Bt, tgt=F.tgt)
    ok = _same_functor(compose_functors(Q, J), F)
    return ok, [] if ok else ["Q o J differs from F"]


def _verify_bimodule(data):
    from .algebras import check_bimodule_iso
    from .morita import functor_to_bimodule
    M = io.bimodule_from_json(data["inputs"]["bimodule"])
    if not data.get("verdict"):
        return True, ["negative verdict: nothing to certify"]
    G = io.functor_from_json(data["functor"])
    if G.validate():
        return False, ["functor is invalid"]
    back = functor_to_bimodule(G)
    X = data.get("round_trip_iso")
    if X is None:
        return False, ["no isomorphism recorded"]
    ok = check_bimodule_iso(M, back, [_dec(M.field, r) for r in X])
    return ok, [] if ok else ["recorded isomorphism fails"]


CHECKERS = {
    "morita-eq": _verify_morita,
    "azumaya-check": _verify_azumaya,
    "brauer-trivialize": _verify_trivialize,
    "brauer-eq": _verify_trivialize,
    "saturation-check": _verify_saturation,
    "mapping-cylinder": _verify_cylinder,
    "bimodule-to-functor": _verify_bimodule,
}


def verify_report(data: dict):
    """``(ok, notes)`` for a report produced by a CLI verb."""
    verb = data.get("verb")
    if verb not in CHECKERS:
        raise io.FormatError(f"no witness checker for {verb!r}")
    try:
        return CHECKERS[verb](data)
    except (KeyError, TypeError, ValueError) as exc:
        raise io.FormatError(f"malformed report: {exc}") from exc
