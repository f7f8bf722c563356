import json
import subprocess
import sys

import pytest

from weberhex import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.mark.parametrize("kind,count", [("goepel", 60), ("rosenhain", 80), ("weber", 192), ("totals", 6), ("classes", 6)])
def test_enumerate(capsys, kind, count):
    code, rep = run(capsys, "enumerate", kind)
    assert code == 0 and rep["exit_code"] == 0
    assert rep["count"] == count
    assert list(rep)[:2] == ["command", "parameters"]
    assert list(rep)[-2:] == ["results", "exit_code"]
    if kind == "classes":
        assert [len(c) for c in rep["items"]] == [32] * 6


def test_enumerate_unknown_kind(capsys):
    assert cli.main(["enumerate", "octads"]) == 2


def test_lattice_report(capsys):
    code, rep = run(capsys, "lattice-report")
    assert code == 0
    names = {r["check"]: r for r in rep["results"]}
    assert names["disc(T) order 64"]["witness"] == 64
    assert names["NS' rank 17"]["pass"]
    assert names["six cyclic order-4 subgroups with q=3/4"]["witness"] == 6
    assert cli.main(["lattice-report", "--bound", "0"]) == 2


def test_hessian(capsys):
    code, rep = run(capsys, "hessian", "--lambda", "1", "1", "1", "1", "16")
    assert code == 0 and rep["degenerate"] is True and rep["P"] == "0"
    code, rep = run(capsys, "hessian", "--lambda", "1", "1", "1", "1", "1")
    assert rep["degenerate"] is False and rep["node"] is None and rep["coordinate_nodes"] == 10
    code, rep = run(capsys, "hessian", "--lambda", "1", "4", "9", "16", "4")
    assert rep["node"] == ["1", "2", "3", "-4", "-2"]
    code, rep = run(capsys, "hessian", "--lambda", "1/2", "-3", "5", "7", "11", "--mode", "float")
    assert code == 0 and "min_sign_sum" in rep


def test_hessian_zero_lambda(capsys):
    code, rep = run(capsys, "hessian", "--lambda", "1", "1", "0", "1", "1")
    assert code == 2 and rep["exit_code"] == 2


def _floats(obj):
    if isinstance(obj, float):
        return [obj]
    if isinstance(obj, dict):
        return [x for v in obj.values() for x in _floats(v)]
    if isinstance(obj, list):
        return [x for v in obj for x in _floats(v)]
    return []


def test_hessian_no_floats_in_exact_mode(capsys):
    _, rep = run(capsys, "hessian", "--lambda", "2", "2", "8", "1", "1")
    assert rep["degenerate"] is True and rep["node"] is None and rep["node_rational"] is False
    assert _floats(rep) == []
    _, rep = run(capsys, "hessian", "--lambda", "2", "2", "8", "1", "1", "--mode", "float")
    assert len(rep["node_float"]) == 5


def test_humbert(capsys):
    code, rep = run(capsys, "humbert", "--branch", "0", "1", "2", "3", "4", "5")
    assert code == 0 and rep["labelings"] == []
    code, rep = run(capsys, "humbert", "--branch", "0", "1", "inf", "-4/5", "3/5", "8/15", "--quartic", "--cross-check")
    assert code == 0
    assert {"cycle": [1, 2, 3, 4, 5], "distinguished": 6} in rep["labelings"]
    assert len(rep["quartics"]) == len(rep["labelings"])
    assert all(len(q["quartic"]) == 5 for q in rep["quartics"])
    assert any(r["check"].startswith("point and line") and r["pass"] for r in rep["results"])


def test_humbert_duplicates(capsys):
    code, rep = run(capsys, "humbert", "--branch", "0", "1", "2", "3", "4", "4")
    assert code == 2


def test_humbert_wrong_arity(capsys):
    assert cli.main(["humbert", "--branch", "0", "1"]) == 2


def test_determinism(capsys):
    outs = []
    for _ in range(2):
        cli.main(["--seed", "3", "hessian", "--lambda", "1", "4", "9", "16", "4"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_flags_after_subcommand(capsys):
    code = cli.main(["enumerate", "totals", "--json-indent", "0", "--seed", "1"])
    out = capsys.readouterr().out
    assert code == 0 and "\n" not in out.strip()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "weberhex", "enumerate", "goepel"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["count"] == 60


def test_verify_all(capsys):
    code, rep = run(capsys, "--seed", "1", "verify-all", "--samples", "40")
    assert code == 0
    assert all(r["pass"] for r in rep["results"])
