import json
import math

import pytest

from regdyn.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    doc = json.loads(out)
    return code, doc


def test_classify(capsys):
    code, doc = _run(capsys, "classify", "--map", "z^2, w^2")
    assert code == 0
    assert doc["schema_version"] == 1
    assert doc["command"] == "classify"
    kinds = {p["classification"]["type"]
             for p in doc["result"]["fixed_points_at_infinity"]}
    assert "Superattracting" in kinds and "ExpandingPlace" in kinds


def test_classify_rejects_non_regular(capsys):
    code = run(["classify", "--map", "z*w, z^2 + w"])
    assert code == 2
    doc = json.loads(capsys.readouterr().out)
    assert "error" in doc


def test_green_archimedean(capsys):
    code, doc = _run(capsys, "green", "--map", "z^2, w^2",
                     "--point", "2,3", "--place", "inf")
    assert code == 0
    g = doc["result"]["green"]
    assert abs(g["lo"] - math.log(3)) < 1e-6
    assert abs(g["hi"] - math.log(3)) < 1e-6


def test_green_finite_place(capsys):
    code, doc = _run(capsys, "green", "--map", "z^2, w^2",
                     "--point", "1/2,1", "--place", "2")
    assert code == 0
    g = doc["result"]["green"]
    assert abs(g["lo"] - math.log(2)) < 1e-9


def test_height_preperiodic(capsys):
    code, doc = _run(capsys, "height", "--map", "z^2, w^2", "--point", "1,1")
    assert code == 0
    assert doc["result"]["preperiodicity"]["kind"] == "Preperiodic"


def test_height_wandering(capsys):
    code, doc = _run(capsys, "height", "--map", "z^2, w^2", "--point", "2,3")
    assert code == 0
    assert doc["result"]["preperiodicity"]["kind"] == "NotPreperiodic"
    assert doc["result"]["canonical_height"]["lo"] > 1.0


def test_orbit(capsys):
    code, doc = _run(capsys, "orbit", "--map", "z^2, w^2",
                     "--point", "2,1", "-n", "3")
    assert code == 0
    last = doc["result"]["orbit"][-1]
    assert last[0]["exact"] == "256/1"


def test_stable_manifold_saddle(capsys):
    code, doc = _run(capsys, "stable-manifold", "--map", "z^2, w^2",
                     "--point", "1", "--order", "12")
    assert code == 0
    nf = doc["result"]["manifolds"][0]["normal_form"]
    assert nf["kind"] == "saddle" and nf["verified"] is True


def test_curve_fixed(capsys):
    code, doc = _run(capsys, "curve", "--map", "z^2, w^2", "--curve", "w - z")
    assert code == 0
    assert doc["result"]["orbit_status"]["kind"] == "Fixed"


def test_curve_undetected_exit_code(capsys):
    code, doc = _run(capsys, "curve", "--map", "z^2, w^2",
                     "--curve", "w - z - 1", "--max-iters", "3")
    assert code == 3
    assert doc["result"]["orbit_status"]["kind"] == "NotDetectedPreperiodic"


def test_dmm(capsys):
    code, doc = _run(capsys, "dmm", "--map", "z^2, w^2", "--curve", "w - z",
                     "--height-bound", "2", "--max-order", "8")
    assert code == 0
    r = doc["result"]
    assert r["hypothesis_witnessed"] and r["conclusion_witnessed"]
    assert r["consistency"] is True


def test_bad_point_input(capsys):
    code = run(["height", "--map", "z^2, w^2", "--point", "bogus"])
    assert code == 2


def test_json_is_single_document(capsys):
    run(["classify", "--map", "z^2, w^2"])
    out = capsys.readouterr().out
    json.loads(out)  # would raise on trailing junk
