import io
import json
import subprocess
import sys

import pytest

from hkbetti import cli
from hkbetti.errors import BugTrap


def run(argv):
    buf = io.StringIO()
    code = cli.run(argv, stdout=buf)
    return code, buf.getvalue()


def test_hilbert_csv():
    code, out = run(["hilbert", "--n", "3", "--format", "csv"])
    assert code == 0
    assert out == "degree,coefficient\n0,1\n2,1\n4,1\n"


def test_torus_json():
    code, out = run(["torus", "--g", "1"])
    assert code == 0 and json.loads(out)["coefficients"] == ["1", "2", "1"]


def test_toric_complete_40_rows():
    code, out = run(["toric-complete", "--n", "40", "--format", "csv"])
    rows = out.strip().split("\n")
    assert code == 0 and len(rows) == 743
    deg, val = rows[-1].split(",")
    assert deg == "1482" and 1.8e46 <= int(val) <= 2.2e46


def test_csv_round_trip_through_moments(tmp_path):
    path = tmp_path / "gr.csv"
    assert run(["grassmann", "--n", "30", "--k", "12", "--format", "csv", "--out", str(path)])[0] == 0
    coeffs = cli.read_coefficients(str(path))
    from hkbetti.families import poincare_grassmannian
    P = poincare_grassmannian(30, 12)
    assert coeffs == {i: c for i, c in enumerate(P.coeffs) if c}
    code, out = run(["moments", "--in", str(path), "--k", "2"])
    assert code == 0 and json.loads(out)["raw"][0] == str(sum(P.coeffs))


def test_json_input_for_moments(tmp_path):
    path = tmp_path / "p.json"
    run(["hilbert", "--n", "6", "--out", str(path)])
    code, out = run(["moments", "--in", str(path), "--k", "1", "--standardize"])
    assert code == 0 and json.loads(out)["raw"][0] == "11"


def test_quiver_commands(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"vertices": 1, "edges": [[0, 0], [0, 0]], "v": [2], "w": [1]}))
    code, out = run(["kac", "--quiver", str(path), "--format", "csv"])
    assert code == 0 and out == "degree,coefficient\n3,1\n5,1\n"
    code, out = run(["nakajima", "--quiver", str(path)])
    assert code == 0


def test_fqcount(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"vertices": 1, "v": [1], "w": [2]}))
    code, out = run(["fqcount", "--quiver", str(path), "--q", "3", "--xi", "1"])
    assert code == 0 and json.loads(out)["fiber_count"] == str(27 - 3)


def test_fit_and_constants(tmp_path):
    path = tmp_path / "g.csv"
    run(["grassmann", "--n", "60", "--k", "3", "--format", "csv", "--out", str(path)])
    code, out = run(["fit", "--dist", "bspline:3", "--in", str(path)])
    rep = json.loads(out)
    assert code == 0 and abs(rep["values"]["abs_error"][4]) < 0.05
    code, out = run(["airy-constants", "--k", "2", "--format", "csv"])
    assert code == 0 and "2,5/12,0," in out


def test_saddle_and_check():
    code, out = run(["saddle-check", "--order", "20"])
    assert code == 0 and json.loads(out)["pass"]
    code, out = run(["check", "--suite", "saddle"])
    assert code == 0 and json.loads(out)["pass"]


def test_thread_invariance():
    a = run(["higgs", "--n", "3", "--g", "2", "--threads", "1"])
    b = run(["higgs", "--n", "3", "--g", "2", "--threads", "3"])
    assert a == b and a[0] == 0


def test_validation_errors(tmp_path, capsys):
    assert run(["grassmann", "--n", "2", "--k", "3"])[0] == 2
    assert "--k" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["kac", "--quiver", str(bad)])[0] == 2
    assert "malformed" in capsys.readouterr().err
    assert run(["toric-complete", "--n", "500"])[0] == 2
    assert run(["fqcount", "--quiver", str(bad), "--q", "4", "--xi", "1"])[0] == 2
    assert run(["fit", "--dist", "cauchy", "--in", str(bad)])[0] == 2
    assert run(["fqcount", "--quiver", str(bad), "--q", "2", "--xi", "1", "--format", "csv"])[0] == 2


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.run(["hilbert", "--n", "3", "--bogus"])
    assert exc.value.code == 2


def test_bug_trap_exits_3(monkeypatch):
    def boom(a):
        raise BugTrap("forced")
    monkeypatch.setattr(cli, "cmd_torus", boom)
    assert run(["torus", "--g", "1"])[0] == 3


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hkbetti", "torus", "--g", "2", "--format", "csv"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[-1] == "4,1"
