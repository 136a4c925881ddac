"""JSON formats for rings, categories, functors, algebras, bimodules and extensions.

Files are written with sorted keys so equal objects give byte-identical text.
Hom keys join object ids with ``|``; functor hom maps are stored as matrices
(rows are target coordinates).
"""
from __future__ import annotations

import json
from pathlib import Path

from .algebras import Algebra, Bimodule
from .envelopes import SatFunctor, SatObject, SatView
from .lincat import KCategory, KFunctor
from .scalars import Field, GaloisExtension, field_from_spec


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def _key(*names) -> str:
    return "|".join(names)


def _split(key: str, n: int):
    parts = key.split("|")
    if len(parts) != n:
        raise FormatError(f"malformed key {key!r}")
    return tuple(parts)


def _enc_vec(F: Field, v):
    return [F.encode(c) for c in v]


def _dec_vec(F: Field, v):
    return [F.decode(c) for c in v]


def ring_of(data: dict) -> Field:
    if "ring" not in data:
        raise FormatError("missing ring")
    spec = data["ring"]
    try:
        return field_from_spec(spec if isinstance(spec, dict) else {"ring": spec})
    except Exception as exc:
        raise FormatError(f"bad ring spec: {exc}") from exc


# --- categories --------------------------------------------------------------------

def category_to_json(A: KCategory) -> dict:
    F = A.field
    out = {
        "ring": F.spec(),
        "name": A.name,
        "objects": list(A.objects),
        "hom": {_key(x, y): d for (x, y), d in A.hom.items() if d},
        "comp": {_key(*k): [[_enc_vec(F, v) for v in row] for row in tab] for k, tab in A.comp.items()},
        "id": {x: _enc_vec(F, v) for x, v in A.ident.items()},
    }
    sat = getattr(A, "sat_objects", None)
    if sat:
        out["sat_objects"] = {name: satobject_to_json(F, s) for name, s in sat.items()}
        out["base"] = category_to_json(A.view.base)
    return out


def category_from_json(data: dict) -> KCategory:
    F = ring_of(data)
    try:
        objects = list(data["objects"])
        hom = {_split(k, 2): int(d) for k, d in data.get("hom", {}).items()}
        comp = {_split(k, 3): [[_dec_vec(F, v) for v in row] for row in tab]
                for k, tab in data.get("comp", {}).items()}
        ident = {x: _dec_vec(F, v) for x, v in data.get("id", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad category file: {exc}") from exc
    for x in objects:
        ident.setdefault(x, [])
    A = KCategory(F, objects, hom, comp, ident, name=data.get("name", ""))
    if "sat_objects" in data and "base" in data:
        base = category_from_json(data["base"])
        A.view = SatView(base)
        A.sat_objects = {n: satobject_from_json(F, s) for n, s in data["sat_objects"].items()}
    return A


def satobject_to_json(F: Field, s: SatObject) -> dict:
    return {"word": list(s.word), "idem": _enc_vec(F, s.idem)}


def satobject_from_json(F: Field, data: dict) -> SatObject:
    return SatObject(tuple(data["word"]), tuple(_dec_vec(F, data["idem"])))


# --- functors ----------------------------------------------------------------------

def functor_to_json(G) -> dict:
    if isinstance(G, SatFunctor):
        F = G.src.field
        return {
            "kind": "sat",
            "name": G.name,
            "src": category_to_json(G.src),
            "tgt": category_to_json(G.view.base),
            "obj_map": {x: satobject_to_json(F, s) for x, s in G.obj_map.items()},
            "hom_maps": {_key(*k): [_enc_vec(F, v) for v in vs] for k, vs in G.images.items()},
        }
    F = G.src.field
    return {
        "kind": "plain",
        "name": G.name,
        "src": category_to_json(G.src),
        "tgt": category_to_json(G.tgt),
        "obj_map": dict(G.obj_map),
        "hom_maps": {_key(x, y): [_enc_vec(F, r) for r in G.matrix(x, y)]
                     for x in G.src.objects for y in G.src.objects if G.src.dim(x, y)},
    }


def functor_from_json(data: dict, src: KCategory | None = None, tgt: KCategory | None = None):
    """Functor file; ``src``/``tgt`` override embedded categories."""
    try:
        src = src or category_from_json(data["src"])
        tgt = tgt or category_from_json(data["tgt"])
        F = src.field
        if data.get("kind") == "sat":
            V = SatView(tgt)
            obj_map = {x: satobject_from_json(F, s) for x, s in data["obj_map"].items()}
            images = {_split(k, 2): [_dec_vec(F, v) for v in vs] for k, vs in data["hom_maps"].items()}
            return SatFunctor(src, V, obj_map, images, name=data.get("name", ""))
        mats = {_split(k, 2): [_dec_vec(F, r) for r in rows] for k, rows in data["hom_maps"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad functor file: {exc}") from exc
    return KFunctor.from_matrices(src, tgt, data["obj_map"], mats, name=data.get("name", ""))


# --- algebras, bimodules, extensions ---------------------------------------------------

def algebra_to_json(A: Algebra) -> dict:
    F = A.field
    return {
        "ring": F.spec(),
        "name": A.name,
        "dim": A.dim,
        "mult": [[_enc_vec(F, v) for v in row] for row in A.mult],
        "unit": _enc_vec(F, A.unit),
    }


def algebra_from_json(data: dict) -> Algebra:
    F = ring_of(data)
    try:
        mult = [[_dec_vec(F, v) for v in row] for row in data["mult"]]
        unit = _dec_vec(F, data["unit"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad algebra file: {exc}") from exc
    if len(mult) != int(data.get("dim", len(mult))):
        raise FormatError("dim does not match the multiplication table")
    return Algebra(F, mult, unit, name=data.get("name", ""))


def _enc_mats(F, mats):
    return [[_enc_vec(F, r) for r in M] for M in mats]


def _dec_mats(F, mats):
    return [[_dec_vec(F, r) for r in M] for M in mats]


def bimodule_to_json(M: Bimodule) -> dict:
    F = M.field
    return {
        "ring": F.spec(),
        "name": M.name,
        "R": algebra_to_json(M.R),
        "S": algebra_to_json(M.S),
        "dim": M.dim,
        "left": _enc_mats(F, M.left),
        "right": _enc_mats(F, M.right),
    }


def bimodule_from_json(data: dict) -> Bimodule:
    F = ring_of(data)
    try:
        R = algebra_from_json(data["R"])
        S = algebra_from_json(data["S"])
        return Bimodule(R, S, int(data["dim"]), _dec_mats(F, data["left"]), _dec_mats(F, data["right"]),
                        name=data.get("name", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad bimodule file: {exc}") from exc


def extension_to_json(E: GaloisExtension) -> dict:
    return {"kind": "extension", **E.spec()}


def extension_from_json(data: dict) -> GaloisExtension:
    try:
        E = GaloisExtension.from_spec(data)
    except Exception as exc:
        raise FormatError(f"bad extension file: {exc}") from exc
    problems = E.validate()
    if problems:
        raise FormatError("; ".join(problems))
    return E


def presentation_from_json(data: dict):
    from .lincat import CategoryPresentation
    try:
        return CategoryPresentation(list(data["objects"]),
                                    {a: tuple(st) for a, st in data["arrows"].items()},
                                    {_split(k, 2): v for k, v in data["composition"].items()},
                                    dict(data["identities"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad presentation: {exc}") from exc


def detect(data: dict) -> str:
    """Guess the kind of a parsed file from its keys."""
    if data.get("kind") == "extension" or "group" in data:
        return "extension"
    if "obj_map" in data:
        return "functor"
    if "left" in data and "right" in data:
        return "bimodule"
    if "mult" in data:
        return "algebra"
    if "arrows" in data:
        return "presentation"
    if "objects" in data:
        return "category"
    raise FormatError("unrecognized file")
