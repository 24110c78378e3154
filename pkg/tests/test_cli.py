import json
import subprocess
import sys

import pytest

from gkz.cli import encode, load_schema, main, validate
from gkz.errors import InputError

TWO_SIMPLEX = {"A": [[1, 0, -1], [0, 2, 3]], "labels": [1, 2, 3], "omega": [0, 0, 1]}
RESIDUE = {"cayley": {"blocks": [[[0, 1, 0, -1], [0, 0, 2, 3]]]}, "labels": [0, 1, 2, 3], "omega": [0, 0, 0, 1], "parameter": ["1/7", "1/3", "1/5"]}


def _run(tmp_path, command, doc=None, *extra):
    out = tmp_path / "report.json"
    argv = [command, "--output", str(out), *extra]
    if doc is not None:
        inp = tmp_path / "input.json"
        inp.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
        argv[1:1] = ["--input", str(inp)]
    code = main(argv)
    report = json.loads(out.read_text()) if out.exists() else None
    if report is not None:
        validate(report, "report")
    return code, report


def test_encoding_conventions():
    from fractions import Fraction

    import numpy as np

    assert encode({"r": Fraction(1, 3), "z": 1 - 2j, "m": np.eye(2, dtype=int), "x": float("inf")}) == {
        "r": "1/3",
        "z": [1.0, -2.0],
        "m": [[1, 0], [0, 1]],
        "x": "inf",
    }


def test_triangulate_worked_example(tmp_path):
    code, rep = _run(tmp_path, "triangulate", TWO_SIMPLEX)
    assert code == 0 and rep["status"] == "Pass"
    res = rep["results"]
    assert [s["sigma"] for s in res["simplices"]] == [[1, 2], [2, 3]]
    assert res["volume"] == 4 and res["simplices"][0]["gevrey"] == {"3": "1/2"}
    assert all(c["anchor"] for c in rep["checks"])


def test_triangulate_square_matrix(tmp_path):
    code, rep = _run(tmp_path, "triangulate", {"A": [[1, 0], [0, 1]], "omega": [0, 0]})
    assert code == 0 and len(rep["results"]["simplices"]) == 1


def test_wall_weight_exits_2_and_names_the_wall(tmp_path):
    code, rep = _run(tmp_path, "triangulate", dict(TWO_SIMPLEX, omega=[1, 2, 2]))
    assert code == 2 and rep["status"] == "Error"
    assert rep["error"]["type"] == "NonGenericWeight" and "column" in rep["error"]


@pytest.mark.parametrize("doc", [{"A": [[1, 0, -1], [0, 2, 3]]}, {"A": "x", "omega": [0]}, "not json", [1, 2]])
def test_input_errors_exit_1(tmp_path, doc):
    code, _ = _run(tmp_path, "triangulate", doc)
    assert code == 1


def test_bad_arguments_exit_1(tmp_path):
    assert main(["nonsense"]) == 1
    assert main(["triangulate", "--input", str(tmp_path / "missing.json")]) == 1
    assert main(["verify", "--jobs", "0"]) == 1


def test_lattice_not_full_exits_2(tmp_path):
    code, rep = _run(tmp_path, "triangulate", {"A": [[2, 0], [0, 2]], "omega": [0, 0]})
    assert code == 2 and rep["error"]["type"] == "LatticeNotFull"


def test_analyze_laplace(tmp_path):
    code, rep = _run(tmp_path, "analyze", dict(TWO_SIMPLEX, parameter=["1/3", "1/5"]))
    assert code == 0
    s = rep["results"]["simplices"][0]
    assert s["representatives"] == [[0], [1]]
    assert s["very_generic"]["status"] == "yes"
    assert len(s["transform"]["matrix"]) == 2 and s["transform"]["abs_det"] > 0


def test_analyze_residue_prefactor(tmp_path):
    import cmath
    import math

    from gkz.special import rgamma

    code, rep = _run(tmp_path, "analyze", RESIDUE, "--kind", "residue")
    assert code == 0
    pref = complex(*rep["results"]["simplices"][0]["transform"]["factors"]["prefactor"])
    assert abs(pref - cmath.exp(-1j * math.pi / 7) * rgamma(1 / 7)) < 1e-14


def test_analyze_unimodular_simplex_gives_scalar(tmp_path):
    doc = {"A": [[1, 1, 1], [0, 1, 2]], "omega": [0, 1, 0], "parameter": ["1/3", "1/5"]}
    code, rep = _run(tmp_path, "analyze", doc)
    sims = rep["results"]["simplices"]
    assert all(len(s["transform"]["matrix"]) == 1 for s in sims if s["volume"] == 1)


def test_hypothesis_violation_is_a_failed_check(tmp_path):
    code, rep = _run(tmp_path, "analyze", dict(TWO_SIMPLEX, parameter=[1, 2]))
    assert code == 2 and rep["status"] == "Fail"
    failed = [c for c in rep["checks"] if c["status"] == "Fail"]
    assert any(c["name"].startswith("hypotheses") for c in failed)


def test_analyze_residue_kind_needs_cayley(tmp_path):
    code, _ = _run(tmp_path, "analyze", dict(TWO_SIMPLEX, parameter=["1/3", "1/5"]), "--kind", "residue")
    assert code == 1


def test_verify_only_hankel(tmp_path):
    code, rep = _run(tmp_path, "verify", None, "--only", "hankel")
    assert code == 0
    assert [c["name"] for c in rep["checks"]] == ["hankel"]
    assert rep["checks"][0]["anchor"]


def test_verify_unknown_criterion(tmp_path):
    code, _ = _run(tmp_path, "verify", None, "--only", "nope")
    assert code == 1


def test_verify_honours_seed_and_jobs(tmp_path, monkeypatch):
    monkeypatch.setenv("GKZ_SEED", "7")
    code, rep = _run(tmp_path, "verify", None, "--only", "snf", "unitarity", "--jobs", "2")
    assert code == 0 and rep["job"]["seed"] == 7 and rep["job"]["jobs"] == 2
    monkeypatch.setenv("GKZ_SEED", "7")
    code2, rep2 = _run(tmp_path, "verify", None, "--only", "snf", "unitarity")
    assert [c["measured"] for c in rep["checks"]] == [c["measured"] for c in rep2["checks"]]


def test_verify_failure_exits_3(tmp_path):
    code, rep = _run(tmp_path, "verify", None, "--only", "deck-invariance")
    assert code == 3 and rep["status"] == "Fail"


def test_oracle_hankel_and_gauss(tmp_path):
    code, rep = _run(tmp_path, "oracle", {"integral": "hankel", "alpha": [0.3, 0.2]})
    assert code == 0 and rep["checks"][0]["status"] == "Pass"
    code, rep = _run(tmp_path, "oracle", {"integral": "gauss", "a": 0.3, "b": 0.7, "c": 1.5, "z": 0.2})
    assert code == 0 and set(rep["results"]["values"]) == {"series", "euler", "laplace", "residue"}
    code, rep = _run(tmp_path, "oracle", {"integral": "pochhammer", "alphas": ["1/2", "1/2"]})
    assert code == 0
    code, _ = _run(tmp_path, "oracle", {"integral": "pochhammer"})
    assert code == 1


@pytest.mark.slow
def test_oracle_laplace_cycle(tmp_path):
    doc = {"integral": "laplace-cycle", "A": [[1, 0, -1], [0, 2, 3]], "labels": [1, 2, 3], "parameter": ["1/3", "1/5"], "sigma": [1, 2], "omega": [0, 0, 1]}
    code, rep = _run(tmp_path, "oracle", doc)
    assert code == 0 and rep["checks"][0]["measured"] < 1e-8


def test_schemas_are_packaged():
    for name in ("common", "triangulate", "analyze", "verify", "oracle", "report"):
        assert load_schema(name)["$id"].endswith(f"v1/{name}.json")
    with pytest.raises(InputError):
        validate({"integral": "hankel"}, "oracle")


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "gkz.cli", "verify", "--only", "triangulations", "--output", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["status"] == "Pass"
