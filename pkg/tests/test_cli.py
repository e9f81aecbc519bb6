import json
import subprocess
import sys

import pytest

from planepairs.cli import SCHEMA, main


def _run(argv, tmp_path, name="r.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out), "--quiet"] if argv[0] == "verify-all" else argv + ["--out", str(out)])
    return code, json.loads(out.read_text())


def _strip(report):
    return {k: v for k, v in report.items() if k != "timing"}


def test_schema_and_record_shape(tmp_path):
    code, rep = _run(["verify-all", "--suite", "cones", "--seed", "42"], tmp_path)
    assert code == 0 and rep["schema"] == SCHEMA
    for r in rep["records"]:
        assert set(r) == {"claim", "inputs", "expected", "computed", "pass"}
        assert "/" in r["claim"]
    assert rep["summary"]["failed"] == 0


def test_borel_enum_lists_both_points(tmp_path):
    code, rep = _run(["borel-enum", "--poly", "C(t+2,2)+t+1", "--n", "4"], tmp_path)
    assert code == 0
    found = {frozenset(g) for g in rep["records"][0]["computed"]}
    assert found == {frozenset(["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x0*x3"]),
                     frozenset(["x0", "x1^2", "x1*x2^2", "x1*x2*x3"])}


def test_mutated_deformation_fails_flatness(tmp_path):
    code, rep = _run(["verify-all", "--suite", "deform", "--mutate"], tmp_path)
    assert code == 1
    failing = [r["claim"] for r in rep["records"] if not r["pass"]]
    assert failing == ["i124/flatness"]


def test_unmutated_deformation_passes(tmp_path):
    code, rep = _run(["deform", "--case", "all"], tmp_path)
    assert code == 0 and all(r["pass"] for r in rep["records"])


def test_report_is_deterministic_across_job_counts(tmp_path):
    args = ["verify-all", "--suite", "borel", "--suite", "gin", "--suite", "cones", "--seed", "42"]
    c1, a = _run(args + ["--jobs", "1"], tmp_path, "a.json")
    c2, b = _run(args + ["--jobs", "2"], tmp_path, "b.json")
    assert c1 == c2 == 0
    assert json.dumps(_strip(a), sort_keys=True) == json.dumps(_strip(b), sort_keys=True)


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("PLANEPAIRS_SEED", "7")
    _, rep = _run(["gin", "--n", "4", "--ideal", "x0*x2,x0*x3,x1*x2,x1*x3"], tmp_path)
    assert rep["config"]["seed"] == 7
    monkeypatch.delenv("PLANEPAIRS_SEED")
    _, rep = _run(["gin", "--n", "4", "--ideal", "x0*x2,x0*x3,x1*x2,x1*x3"], tmp_path)
    assert rep["config"]["seed"] == 42


@pytest.mark.parametrize("argv", [
    ["hilb", "--n", "4", "--ideal", "x0^2,x0*x1,x1^2,x0*x2,x1*x2,x0*x3"],
    ["betti", "--n", "3", "--ideal", "x0^2,x0*x1,x1^2,x0*x2,x1*x2"],
    ["tangent", "--n", "4", "--ideal", "x0^2,x0*x1,x1^2,x0*x2,x1*x2,x0*x3"],
    ["catalog", "--family", "fixed", "--n", "4"],
    ["cones", "--family", "pair-3", "--n", "6"],
    ["family", "--k", "2", "--n", "4", "--samples", "3"],
])
def test_subcommands_succeed(argv, tmp_path):
    code, rep = _run(argv, tmp_path)
    assert code == 0 and rep["records"]


def test_tangent_value_in_report(tmp_path):
    _, rep = _run(["tangent", "--n", "4", "--ideal", "x0^2,x0*x1,x1^2,x0*x2,x1*x2,x0*x3"], tmp_path)
    assert rep["records"][0]["computed"] == 18


def test_bad_polynomial_is_a_usage_error(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["hilb", "--n", "2", "--ideal", "x0 +* x1"])
    assert e.value.code != 0


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "planepairs", "--version"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip()
