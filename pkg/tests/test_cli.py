from __future__ import annotations

import json
import subprocess
import sys

import pytest

from pancyclic.cli import BAD_INPUT, BUDGET, OK, VIOLATED, main
from pancyclic.formats import to_edgelist, to_graph6
from pancyclic.graph import Graph


def _write(tmp_path, g, name="g.g6"):
    f = tmp_path / name
    f.write_bytes(to_graph6(g) + b"\n")
    return str(f)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_profile(tmp_path, capsys):
    code, out = _run(capsys, ["profile", _write(tmp_path, Graph.petersen())])
    assert code == OK and out == {"n": 10, "alpha": 4, "kappa": 3, "min_degree": 3}


def test_check_complete_graph(tmp_path, capsys):
    code, out = _run(capsys, ["check", _write(tmp_path, Graph.complete(7))])
    assert code == OK and out["complete"] and sorted(map(int, out["cycles"])) == list(range(3, 8))
    assert out["missing"] == []


def test_check_edgelist_and_non_hypothesis(tmp_path, capsys):
    f = tmp_path / "k33.txt"
    f.write_text(to_edgelist(Graph.complete_bipartite(3, 3)))
    code, out = _run(capsys, ["check", str(f), "--format", "edgelist"])
    assert code == OK and out["missing"] == [3, 5] and not out["complete"]
    assert out["hypothesis"] is False


def test_find_cycle(tmp_path, capsys):
    path = _write(tmp_path, Graph.complete(8))
    code, out = _run(capsys, ["find-cycle", path, "--length", "6"])
    assert code == OK and len(out["cycle"]) == 6
    code, out = _run(capsys, ["find-cycle", _write(tmp_path, Graph.cycle(6), "c6.g6"), "--length", "5"])
    assert code == VIOLATED and out["status"] == "none"
    code, _ = _run(capsys, ["find-cycle", path, "--length", "9"])
    assert code == BAD_INPUT


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.g6"
    bad.write_bytes(b"~~~~\n")
    assert main(["profile", str(bad)]) == BAD_INPUT
    assert main(["profile", str(tmp_path / "missing.g6")]) == BAD_INPUT
    assert main(["lemma-test", "--name", "nope", "--seed", "1"]) == BAD_INPUT
    assert main(["no-such-command"]) == BAD_INPUT
    capsys.readouterr()


def test_hunt_and_lemma(capsys):
    code, out = _run(capsys, ["hunt", "--n-max", "5"])
    assert code == OK and out["counterexamples"] == [] and out["graphs_scanned"] == 8 + 64 + 1024
    code, out = _run(capsys, ["lemma-test", "--name", "rotate-c2", "--trials", "50", "--seed", "7"])
    assert code == OK and out["passed"] and out["counts"]["pass"] == 50


def test_budget_exit_code(monkeypatch, tmp_path, capsys):
    from pancyclic import cli
    from pancyclic.errors import BudgetExceeded

    def boom(*a, **k):
        raise BudgetExceeded("out of budget")

    monkeypatch.setattr(cli, "cycle_of_length", boom)
    assert main(["find-cycle", _write(tmp_path, Graph.complete(5)), "--length", "4"]) == BUDGET
    capsys.readouterr()


def test_module_entry_point(tmp_path):
    path = _write(tmp_path, Graph.complete(5))
    res = subprocess.run([sys.executable, "-m", "pancyclic", "profile", path], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["kappa"] == 4
