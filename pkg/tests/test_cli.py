import json

import pytest
from click.testing import CliRunner

from forklat import Lattice
from forklat.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _run(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def test_generate_trivial(runner, tmp_path):
    out = tmp_path / "l.json"
    r = _run(runner, "generate", "--seed", "0", "--base", "2,2",
             "--forks", "0", "-o", str(out))
    assert r.exit_code == 0
    d = json.loads(out.read_text())
    assert d["n"] == 4
    assert d["history"] == {"base": [2, 2], "seed": 0, "steps": []}


def test_fork_to_seven_elements(runner, tmp_path):
    l_path, ls_path = tmp_path / "l.json", tmp_path / "ls.json"
    t_path = tmp_path / "t.json"
    _run(runner, "generate", "--seed", "0", "--base", "2,2", "--forks", "0",
         "-o", str(l_path))
    r = _run(runner, "fork", "-i", str(l_path), "--square", "0,1,2,3",
             "-o", str(ls_path), "--trace", str(t_path))
    assert r.exit_code == 0
    assert json.loads(ls_path.read_text())["n"] == 7
    trace = json.loads(t_path.read_text())
    assert len(trace["left_chain"]) == 1 and len(trace["right_chain"]) == 1


def test_fork_rejects_bad_square(runner, tmp_path):
    l_path = tmp_path / "l.json"
    _run(runner, "generate", "--seed", "0", "--base", "2,3", "--forks", "0",
         "-o", str(l_path))
    r = _run(runner, "fork", "-i", str(l_path), "--square", "0,1,2,5",
             "-o", str(tmp_path / "x.json"))
    assert r.exit_code != 0
    err = json.loads(r.output.strip().splitlines()[-1])
    assert err["error"] == "not-a-covering-square"


def test_malformed_input_error_json(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = _run(runner, "con", "-i", str(bad), "-o", str(tmp_path / "c.json"))
    assert r.exit_code != 0
    err = json.loads(r.output.strip().splitlines()[-1])
    assert err["error"] == "malformed-input"


def test_con_full_and_principal(runner, tmp_path):
    l_path, c_path = tmp_path / "l.json", tmp_path / "c.json"
    _run(runner, "generate", "--seed", "0", "--base", "2,2", "--forks", "0",
         "-o", str(l_path))
    r = _run(runner, "con", "-i", str(l_path), "--full", "-o", str(c_path))
    assert r.exit_code == 0
    d = json.loads(c_path.read_text())
    assert d["count"] == 4
    assert "refinement_edges" in d and "join_irreducible" in d
    r = _run(runner, "con", "-i", str(l_path), "--principal", "1,3",
             "-o", str(c_path))
    assert r.exit_code == 0
    d = json.loads(c_path.read_text())
    assert d["principal_of"] == [1, 3]


def test_verify_single_square_report(runner, tmp_path):
    l_path, rep_path = tmp_path / "l.json", tmp_path / "rep.json"
    _run(runner, "generate", "--seed", "0", "--base", "2,2", "--forks", "0",
         "-o", str(l_path))
    r = _run(runner, "verify", "-i", str(l_path), "--square", "0,1,2,3",
             "-o", str(rep_path))
    assert r.exit_code == 0
    d = json.loads(rep_path.read_text())
    assert d["summary"]["fail"] == 0
    assert rep_path.with_suffix(".csv").exists()
    header = rep_path.with_suffix(".csv").read_text().splitlines()[0]
    assert header.startswith("square,kind,")


def test_verify_corpus_with_figures(runner, tmp_path):
    rep_path, figs = tmp_path / "rep.json", tmp_path / "figs"
    r = _run(runner, "verify", "--corpus", "0..2", "--figures", str(figs),
             "-o", str(rep_path))
    assert r.exit_code == 0
    d = json.loads(rep_path.read_text())
    assert len(d["lattices"]) == 3
    assert sorted(p.name for p in figs.iterdir()) == [
        "seed-0.png", "seed-1.png", "seed-2.png"]


def test_export_dot_tikz_png(runner, tmp_path):
    l_path, ls_path = tmp_path / "l.json", tmp_path / "ls.json"
    t_path = tmp_path / "t.json"
    _run(runner, "generate", "--seed", "0", "--base", "2,2", "--forks", "0",
         "-o", str(l_path))
    _run(runner, "fork", "-i", str(l_path), "--square", "0,1,2,3",
         "-o", str(ls_path), "--trace", str(t_path))
    dot = tmp_path / "d.dot"
    r = _run(runner, "export", "-i", str(ls_path), "--format", "dot",
             "--trace", str(t_path), "-o", str(dot))
    assert r.exit_code == 0
    text = dot.read_text()
    assert text.startswith("graph ") and text.rstrip().endswith("}")
    assert sum(1 for line in text.splitlines() if " -- " in line) == 9
    assert text.count("fillcolor=black") == 3
    tikz = tmp_path / "d.tex"
    r = _run(runner, "export", "-i", str(ls_path), "--format", "tikz",
             "-o", str(tikz))
    assert r.exit_code == 0
    assert "\\begin{tikzpicture}" in tikz.read_text()
    png = tmp_path / "d.png"
    r = _run(runner, "export", "-i", str(ls_path), "--format", "png",
             "-o", str(png))
    assert r.exit_code == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_json_round_trip_is_identity(runner, tmp_path):
    l_path = tmp_path / "l.json"
    _run(runner, "generate", "--seed", "3", "--forks", "2", "-o", str(l_path))
    d = json.loads(l_path.read_text())
    L = Lattice.from_dict(d)
    again = L.to_dict()
    assert again == {k: d[k] for k in ("n", "covers", "left_order")}
    assert Lattice.from_dict(again) == L
