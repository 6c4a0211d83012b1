from __future__ import annotations

import json

import pytest

from ctdesign import cli, reproduce
from ctdesign.constructions import read_design
from ctdesign.permgroup import read_group


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,blocks",
    [
        (["pg-lines", "--q", "3"], 13),
        (["witt", "--n", "24"], 759),
        (["example3", "--b", "4", "--k", "2"], 24),
        (["example1", "--v", "6", "--k", "3", "--y", "0,1"], 4),
    ],
)
def test_construct_counts(tmp_path, capsys, argv, blocks):
    path = tmp_path / "d.txt"
    code, _, _ = run(capsys, "construct", *argv, "--out", str(path))
    assert code == 0
    assert len(read_design(path)) == blocks


def test_construct_then_analyze(tmp_path, capsys):
    d, g = tmp_path / "fano.txt", tmp_path / "pgl.txt"
    assert run(capsys, "construct", "pg-lines", "--q", "2", "--out", str(d), "--group", str(g))[0] == 0
    assert read_group(g).order() == 168
    code, out, _ = run(capsys, "analyze", "--design", str(d), "--group", str(g), "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert (rep["r"], rep["delta"], rep["strength"]) == (1, 2, 2)
    assert rep["completely_regular"]["verdict"] is True
    assert rep["group"]["completely_transitive"] is True
    assert rep["manifest"]["command"] == "analyze"


def test_analyze_witt22_witness(capsys):
    code, out, _ = run(capsys, "analyze", "--design", "witt22", "--format", "json")
    assert code == 0
    cr = json.loads(out)["completely_regular"]
    assert cr["verdict"] is False and "witness" in cr


def test_analyze_biplane(capsys):
    code, out, _ = run(capsys, "analyze", "--design", "biplane", "--group", "l2_11", "--format", "json")
    rep = json.loads(out)
    assert (rep["r"], rep["delta"]) == (2, 3)
    assert rep["group"]["completely_transitive"] is False
    assert sorted(rep["group"]["orbit_sizes"]) == [11, 55, 66, 330]


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--group", "m11_12", "--k", "6", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert sorted(o["size"] for o in rep["orbits"]) == [22, 110, 792]
    code, out, _ = run(capsys, "orbits", "--group", "sym7", "--k", "3", "--format", "json")
    assert [o["size"] for o in json.loads(out)["orbits"]] == [35]


def test_screen(capsys):
    code, out, _ = run(capsys, "screen", "--family", "suzuki", "--format", "json")
    assert code == 0
    rows = json.loads(out)["tables"][0]["rows"]
    assert rows and all(r["verdict"] == "ELIMINATED" for r in rows)
    code, out, _ = run(capsys, "screen", "--family", "L2", "--format", "csv")
    assert code == 0 and out.startswith("family,")


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "analyze", "--design", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "construct", "nonsense")[0] == 2
    assert run(capsys, "construct", "pg-lines", "--q", "6")[0] == 2
    assert run(capsys, "analyze", "--design", "witt24", "--max-ranks", "1000")[0] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("7 3 2\n0 1 2\n")
    assert run(capsys, "analyze", "--design", str(bad))[0] == 2
    # groups that do not preserve the design
    assert run(capsys, "analyze", "--design", "biplane", "--group", "sym11")[0] == 2
    assert run(capsys, "analyze", "--design", "biplane", "--group", "m11")[0] == 2
    assert run(capsys, "analyze", "--design", "biplane", "--group", "no_such_group")[0] == 2


def test_deterministic_output(tmp_path, capsys):
    # the manifest records the output path, so reuse the same one
    path = tmp_path / "report.json"
    outs = []
    for _ in range(2):
        run(capsys, "analyze", "--design", "pg3", "--group", "pgl3_3", "--format", "json", "--out", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_verify_exit_code_on_failure(monkeypatch, capsys):
    bad = reproduce.CriterionResult(1, "stub", 1.0, [reproduce.Check("x", False, "forced")], 0.0)
    good = reproduce.CriterionResult(2, "stub", 1.0, [reproduce.Check("y", True, "")], 0.0)
    monkeypatch.setattr(reproduce, "run_all", lambda: [bad, good])
    monkeypatch.setattr(reproduce, "run_audit", lambda names=None: [])
    code, out, _ = run(capsys, "verify")
    assert code == 4
    assert "1 of 2 criteria passed" in out
    monkeypatch.setattr(reproduce, "run_all", lambda: [good])
    assert run(capsys, "verify")[0] == 0
