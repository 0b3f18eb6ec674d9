import json
import subprocess
import sys

import pytest

from kplane import graphs
from kplane.cli import main


def test_gen_gk(tmp_path):
    out = tmp_path / "g2.txt"
    assert main(["gen", "gk", "--k", "2", "--out", str(out)]) == 0
    g = graphs.read_edge_list(out)
    assert (g.n, g.m) == (160, 670)


def test_gen_gadget_stdout(capsys):
    assert main(["gen", "gadget-x"]) == 0
    g = graphs.loads(capsys.readouterr().out)
    assert (g.n, g.m) == (9, 32)


@pytest.mark.parametrize("argv", [
    ["gen", "gk", "--k", "1"],
    ["gen", "gk"],
    ["gen", "k9-minus", "--remove", "0-9"],
    ["gen", "k9-minus", "--remove", "zero-one"],
    ["gen", "no-such-family"],
    ["enumerate", "--graph", "does-not-exist"],
    ["check"],
])
def test_bad_input_exits_2(argv):
    assert main(argv) == 2


def test_enumerate_gadget(tmp_path, capsys):
    stats = tmp_path / "stats.json"
    assert main(["enumerate", "--graph", "gadget-x", "--k", "2", "--out", str(tmp_path / "d"),
                 "--stats", str(stats)]) == 0
    assert "drawings: 32" in capsys.readouterr().out
    assert len(list((tmp_path / "d").glob("drawing_*.json"))) == 32
    assert json.loads(stats.read_text())["drawings"] == 32
    first = tmp_path / "d" / "drawing_0000.json"
    assert main(["check", "--drawing", str(first), "--saturated"]) == 0
    assert main(["export", "--drawing", str(first), "--out", str(tmp_path / "x.dot")]) == 0
    assert (tmp_path / "x.dot").read_text().startswith("graph")


def test_enumerate_budget_inconclusive(capsys):
    assert main(["enumerate", "--graph", "k6", "--budget", "5"]) == 3
    assert "inconclusive" in capsys.readouterr().out


def test_check_k5(capsys):
    assert main(["check", "--graph", "k5", "--maximal"]) == 0
    assert main(["check", "--graph", "c10", "--maximal"]) == 1
    assert main(["check", "--graph", "k5", "--k", "0"]) == 1
    assert main(["check", "--graph", "k9"]) == 1


def test_check_from_file(tmp_path):
    f = tmp_path / "k9m.txt"
    assert main(["gen", "k9-minus", "--remove", "0-1,2-3,4-5,5-6", "--out", str(f)]) == 0
    assert main(["check", "--graph", str(f), "--k", "2"]) == 0


def test_audit_k5(tmp_path, capsys):
    rep = tmp_path / "audit.json"
    assert main(["audit", "--graph", "k5", "--report", str(rep)]) == 0
    assert "verdict: pass" in capsys.readouterr().out
    body = json.loads(rep.read_text())
    assert body["verdict"]["margin"] == 0 and body["verdict"]["status"] == "pass"


def test_audit_not_maximal():
    assert main(["audit", "--graph", "c10"]) == 1


def test_pipeline_zero_iterations(tmp_path, capsys):
    assert main(["pipeline", "--max-iter", "0", "--state", str(tmp_path / "st"),
                 "--stats", str(tmp_path / "t.json")]) == 0
    assert json.loads(capsys.readouterr().out)["reduced_drawings"] == 1
    assert (tmp_path / "st" / "index.json").exists()


def test_export_nested_json(tmp_path):
    out = tmp_path / "n.json"
    assert main(["export", "--construction", "nested", "--k", "2", "--format", "json", "--out", str(out)]) == 0
    assert main(["check", "--drawing", str(out)]) == 0


def test_console_script_help():
    r = subprocess.run([sys.executable, "-m", "kplane.cli", "--help"], capture_output=True, text=True)
    assert r.returncode == 0
    for cmd in ("gen", "enumerate", "pipeline", "check", "audit", "export"):
        assert cmd in r.stdout
