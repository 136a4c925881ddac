from __future__ import annotations

import json
import random
import subprocess
import sys

import pytest

from moritakit import io
from moritakit.acceptance import corner_functor
from moritakit.algebras import hamilton_quaternions, matrix_algebra, product_algebra, regular_bimodule
from moritakit.cli import main
from moritakit.generators import retract_category
from moritakit.samples import random_functor
from moritakit.scalars import GF4, gf


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        io.dump(obj, p)
        return str(p)
    return write


def _run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None), str(out)


def test_validate(files, tmp_path):
    good = files("r1.json", io.category_to_json(retract_category(gf(2))))
    code, rep, _ = _run(["validate", good], tmp_path)
    assert code == 0 and rep["verdict"] is True
    data = io.category_to_json(retract_category(gf(2)))
    data["id"]["o"] = ["0", "0"]
    bad = files("bad.json", data)
    code, rep, _ = _run(["validate", bad], tmp_path)
    assert code == 1 and rep["problems"]


def test_morita_eq_with_witness(files, tmp_path):
    corner, unit = corner_functor(2, 2)
    code, rep, path = _run(["morita-eq", files("c.json", io.functor_to_json(corner))], tmp_path)
    assert code == 0 and rep["verdict"] is True
    code, check, _ = _run(["verify-witness", path], tmp_path, "v.json")
    assert code == 0 and check["verdict"] is True
    code, rep, _ = _run(["morita-eq", files("u.json", io.functor_to_json(unit))], tmp_path)
    assert code == 0 and rep["verdict"] is False


def test_tampered_witness_is_rejected(files, tmp_path):
    corner, _ = corner_functor(2, 2)
    _, rep, _ = _run(["morita-eq", files("c.json", io.functor_to_json(corner))], tmp_path)
    for y, wits in rep["witness"].items():
        for w in wits:
            w["f"] = ["0"] * len(w["f"])
    forged = files("forged.json", rep)
    code, check, _ = _run(["verify-witness", forged], tmp_path, "v.json")
    assert code == 1 and check["verdict"] is False


def test_azumaya_and_brauer(files, tmp_path):
    H = files("h.json", io.algebra_to_json(hamilton_quaternions()))
    code, rep, _ = _run(["azumaya-check", H], tmp_path)
    assert code == 0 and rep["verdict"] is True
    kk = files("kk.json", io.algebra_to_json(product_algebra(gf(2), 2)))
    code, rep, _ = _run(["azumaya-check", kk], tmp_path)
    assert code == 0 and rep["verdict"] is False and rep["certificate"]["rank"] == 2
    code, rep, _ = _run(["brauer-trivialize", H], tmp_path)
    assert code == 3 and rep["verdict"] == "unknown"
    code, rep, path = _run(["brauer-eq", H, H], tmp_path)
    assert code == 0 and rep["verdict"] is True
    assert _run(["verify-witness", path], tmp_path, "v.json")[0] == 0
    assert _run(["brauer-mul", kk, kk], tmp_path)[0] == 2


def test_saturation_check(files, tmp_path):
    R = files("r1.json", io.category_to_json(retract_category(gf(2))))
    code, rep, path = _run(["saturation-check", R], tmp_path)
    assert code == 0
    assert _run(["verify-witness", path], tmp_path, "v.json")[0] == 0


def test_mapping_cylinder_and_bimodule(files, tmp_path):
    F = random_functor(gf(2), random.Random(3), 2, 2)
    code, _, path = _run(["mapping-cylinder", files("f.json", io.functor_to_json(F))], tmp_path)
    assert code == 0
    assert _run(["verify-witness", path], tmp_path, "v.json")[0] == 0
    M = regular_bimodule(matrix_algebra(gf(3), 2))
    code, rep, path = _run(["bimodule-to-functor", files("m.json", io.bimodule_to_json(M))], tmp_path, "b.json")
    assert code == 0 and rep["verdict"] is True
    assert _run(["verify-witness", path], tmp_path, "v.json")[0] == 0


def test_corestriction_verbs(files, tmp_path):
    E = GF4()
    ext = files("e.json", io.extension_to_json(E))
    code, rep, _ = _run(["cor-module", ext, "3"], tmp_path)
    assert code == 0 and rep["dim"] == 9
    A = files("m2.json", io.algebra_to_json(matrix_algebra(E.field, 2)))
    code, rep, _ = _run(["cor-algebra", ext, A], tmp_path)
    assert code == 0 and rep["dim"] == 16
    wrong = files("m2k.json", io.algebra_to_json(matrix_algebra(gf(3), 2)))
    assert _run(["base-change", ext, wrong], tmp_path)[0] == 2


def test_acceptance_is_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["acceptance", "core", "7", "--out", str(a)]) == 0
    assert main(["acceptance", "core", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    err = capsys.readouterr().err
    assert err.count("[PASS]") == 8


def test_usage_errors(tmp_path, capsys):
    assert main(["acceptance", "nosuch"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["validate", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[")
    assert main(["validate", str(bad)]) == 2
    assert main(["validate"]) == 2


def test_module_entry_point(tmp_path):
    p = tmp_path / "r1.json"
    io.dump(io.category_to_json(retract_category(gf(2))), p)
    proc = subprocess.run([sys.executable, "-m", "moritakit", "validate", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] is True


def test_saturation_check_over_rationals(files, tmp_path):
    from moritakit.envelopes import additive_hull
    from moritakit.scalars import QQ
    H = files("h.json", io.category_to_json(additive_hull(retract_category(QQ), 2)))
    code, rep, path = _run(["saturation-check", H], tmp_path)
    # words of length three are outside the truncation, so the search cannot finish
    assert code == 3 and rep["verdict"] == "unknown"
    assert rep["summary"]["direct_sums_found"] > 0
    assert _run(["verify-witness", path], tmp_path, "v.json")[0] == 0
