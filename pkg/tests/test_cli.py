import csv
import io
import json
import math
import subprocess
import sys

import pytest

from sl2geo import cli, report
from sl2geo.errors import PreconditionError, SolverError
from sl2geo.report import SuiteResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_geodesic_csv(capsys):
    code, out, _ = run(capsys, "geodesic", "--q", "0,0.5,0")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["s", "alpha", "lambda", "regime", "residual"]
    assert float(rows[0]["s"]) == pytest.approx(math.atanh(0.5), abs=1e-9)
    assert rows[0]["regime"] == "H2Like"


def test_translate_json_meta(capsys):
    code, out, _ = run(capsys, "translate", "--q", "0.3,0.3,0", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc["meta"]["versions"]) == {"sl2geo", "numpy", "scipy"}
    assert doc["meta"]["command"] == "translate"
    assert doc["rows"][0]["regime"] == "LightLike"
    assert doc["rows"][0]["s"] == pytest.approx(0.3 * math.sqrt(2))


def test_triangle_negative_coordinates(capsys):
    code, out, _ = run(capsys, "triangle", "--a2=0.1,-0.2,0.1", "--a3=-0.1,0.1,0.2", "--kind", "translation")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["sum"]) >= math.pi - 1e-9 and row["kind"] == "Translation"


def test_table4_rows(capsys):
    code, out, _ = run(capsys, "table4", "--z3", "0.1", "--no-limits")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1 and float(rows[0]["sum"]) == pytest.approx(2.9872, abs=5e-4)
    assert list(rows[0])[:6] == ["z3", "alpha23", "d_A2A3", "omega2", "omega3", "sum"]


def test_table3_limit_rows(capsys):
    code, out, _ = run(capsys, "table3", "--y2", "0.5", "--format", "json")
    assert code == 0
    kinds = [r["kind"] for r in json.loads(out)["rows"]]
    assert kinds == ["limit y2->0", "row", "limit y2->1"]


def test_sweep_and_verify_small(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    assert run(capsys, "sweep", "--family", "hyperbolic", "--n", "2", "--out", str(target))[0] == 0
    assert len(target.read_text().splitlines()) == 5
    code, out, _ = run(capsys, "verify", "--suite", "antipodality", "--n", "5", "--format", "json")
    assert code == 0 and json.loads(out)["rows"][0]["passed"] is True


def test_verify_is_deterministic(capsys):
    args = ("verify", "--suite", "translation-anglesum", "--n", "20", "--seed", "7", "--format", "json")
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first


@pytest.mark.parametrize("argv", [
    ["geodesic"],
    ["geodesic", "--q", "0,1.5,0"],
    ["geodesic", "--q", "nope"],
    ["table3", "--y2", "1.5"],
    ["find-pi", "--tol", "0"],
    ["sweep", "--n", "0"],
    ["frobnicate"],
])
def test_bad_arguments_exit_4(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 4


def test_geometry_error_exit_4(capsys):
    code, _, err = run(capsys, "triangle", "--a2", "0.1,0.1,0.1", "--a3", "0.2,0.2,0.2", "--kind", "translation")
    assert code == 4 and "collinear" in err


def test_precondition_failure_exit_4(capsys, monkeypatch):
    def no_straddle(*a, **k):
        raise PreconditionError("angle sums at the endpoints do not straddle pi")
    monkeypatch.setattr(cli, "find_pi_sum_triangle", no_straddle)
    code, _, err = run(capsys, "find-pi")
    assert code == 4 and "straddle" in err


def test_solver_failure_exit_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise SolverError("no root", 0.5)
    monkeypatch.setattr(cli, "solve_geodesic_to", boom)
    code, _, err = run(capsys, "geodesic", "--q", "0,0.5,0")
    assert code == 3 and "residual" in err


def test_violation_exit_2(capsys, monkeypatch):
    def failing(rng, n):
        return SuiteResult("antipodality", False, n, -1.0, 1e-10, {"A2": [0, 0, 0]})
    monkeypatch.setitem(report.SUITES, "antipodality", (failing, 1))
    code, out, _ = run(capsys, "verify", "--suite", "antipodality")
    assert code == 2 and "False" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sl2geo", "geodesic", "--q", "0.2,0,0"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[0] == "s,alpha,lambda,regime,residual"
