from __future__ import annotations

import json
import subprocess
import sys

import pytest

from flipforge.cli import main
from flipforge.constructions import construct_rb
from flipforge.graph import ColouredGraph, complete_graph, cycle_graph
from flipforge.io import load_graph, save_graph

jsonschema = pytest.importorskip("jsonschema")
from flipforge.schemas import load_schema  # noqa: E402


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def doc(out):
    return json.loads(out)


def test_construct_writes_graph_and_certificate(tmp_path, capsys):
    g, c = tmp_path / "g.json", tmp_path / "cert.json"
    code, out, err = run(capsys, "construct", "rb", 3, 5, "--out", g, "--cert", c)
    assert code == 0 and "40 vertices" in err
    jsonschema.validate(doc(out), load_schema("certificate"))
    assert load_graph(g).n == 40
    assert json.loads(c.read_text()) == doc(out)


def test_construct_cayley_edge_list(tmp_path, capsys):
    p = tmp_path / "c.el"
    code, _, _ = run(capsys, "construct", "cayley", 3, "--out", p)
    assert code == 0 and p.read_text().split("\n", 1)[0] == "2048 2"


def test_construct_rejection_cites_classifier(capsys):
    code, out, err = run(capsys, "construct", "rb", 3, 6)
    assert code == 1 and out == "" and "two-colour-characterisation" in err


def test_construct_unknown_recipe(capsys):
    code, _, err = run(capsys, "construct", "bogus", 1)
    assert code == 1 and "unknown recipe" in err


def test_verify_pass_and_certificate(tmp_path, capsys):
    g, c = tmp_path / "g.el", tmp_path / "cert.json"
    run(capsys, "construct", "rb", 3, 5, "--out", g, "--cert", c)
    code, out, err = run(capsys, "verify", g, "--cert", c, "--report", tmp_path / "r.json")
    assert code == 0 and err.startswith("PASS mode=strict t=1 colours=2 vertices=40")
    jsonschema.validate(doc(out), load_schema("report"))
    assert doc(out)["certificate_mismatches"] == []
    assert len(json.loads((tmp_path / "r.json").read_text())["per_vertex_counts"]) == 40


def test_verify_certificate_mismatch(tmp_path, capsys):
    g, c = tmp_path / "g.el", tmp_path / "cert.json"
    run(capsys, "construct", "rb", 3, 5, "--out", g, "--cert", c)
    data = json.loads(c.read_text())
    data["counts"] = [[6, 4]]
    c.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", g, "--cert", c)
    assert code == 2 and doc(out)["certificate_mismatches"]


def test_verify_weak23(tmp_path, capsys):
    g = tmp_path / "w.json"
    run(capsys, "construct", "weak23", "--out", g)
    code, out, err = run(capsys, "verify", g)
    assert code == 2 and err.startswith("FAIL")
    assert doc(out)["counterexample"]["kind"] == "count"
    code, _, _ = run(capsys, "verify", g, "--weak")
    assert code == 0


def test_verify_cayley_radius_two(tmp_path, capsys):
    g = tmp_path / "c.el"
    run(capsys, "construct", "cayley", 3, "--out", g)
    code, out, _ = run(capsys, "verify", g, "--t", 2)
    assert code == 0 and doc(out)["uniform_counts"] == [[28, 8], [252, 120]]


def test_verify_regular_flag(tmp_path, capsys):
    # disjoint (3,4)- and (3,5)-flip graphs: flip at every vertex, colour 2 irregular
    a, _ = construct_rb(3, 4)
    b, _ = construct_rb(3, 5)
    edges = list(a.edges()) + [(x + a.n, y + a.n, c) for x, y, c in b.edges()]
    p = tmp_path / "u.el"
    save_graph(ColouredGraph.from_edges(a.n + b.n, 2, edges), p)
    assert run(capsys, "verify", p)[0] == 0
    code, out, _ = run(capsys, "verify", p, "--regular")
    assert code == 2 and doc(out)["counterexample"]["kind"] == "not-colour-regular"


def test_verify_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.el"
    p.write_text("3 2\n0 1 1\n0 1 2\n")
    code, out, err = run(capsys, "verify", p)
    assert code == 1 and "duplicate edge at line 3" in err


def test_verify_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "verify", tmp_path / "none.el")
    assert code == 1 and "error" in err


def test_classify_codes(capsys):
    code, out, _ = run(capsys, "classify", 4, 20, 33)
    assert code == 2 and doc(out)["rules"][0]["id"] == "three-colour-quadratic-bound"
    jsonschema.validate(doc(out), load_schema("verdict"))
    code, out, _ = run(capsys, "classify", 3, 5)
    assert code == 0 and doc(out)["recipe"]["recipe"] == "rb-opt"
    code, _, _ = run(capsys, "classify", 3, 4, 5, 6)
    assert code == 3
    code, _, err = run(capsys, "classify", 5, 3)
    assert code == 1


def test_classify_weak(capsys):
    code, out, _ = run(capsys, "classify", "--weak", 2, 3)
    assert code == 0
    jsonschema.validate(doc(out), load_schema("verdict"))
    assert run(capsys, "classify", "--weak", 1, 5)[0] == 2
    assert run(capsys, "classify", "--weak", 2, 4)[0] == 3
    assert run(capsys, "classify", "--weak", 2, 3, 4)[0] == 1


def test_census(tmp_path, capsys):
    p = tmp_path / "k3.json"
    save_graph(complete_graph(3, k=2), p)
    code, out, _ = run(capsys, "census", p)
    assert code == 0 and doc(out)["per_vertex"]["BBB"] == [1, 1, 1]
    jsonschema.validate(doc(out), load_schema("census"))
    q = tmp_path / "k3c.json"
    save_graph(complete_graph(3, k=3), q)
    assert run(capsys, "census", q)[0] == 1


def test_pack(tmp_path, capsys):
    a, b, out_path = tmp_path / "c5.el", tmp_path / "c5b.el", tmp_path / "u.el"
    save_graph(cycle_graph(5), a)
    save_graph(cycle_graph(5), b)
    code, out, _ = run(capsys, "pack", a, b, "--seed", 7, "--out", out_path)
    assert code == 0 and doc(out)["found"] and not doc(out)["guaranteed"]
    jsonschema.validate(doc(out), load_schema("packing"))
    assert load_graph(out_path).m == 10
    assert run(capsys, "pack", a, b, "--seed", 7, "--strict")[0] == 1


def test_pack_not_found(tmp_path, capsys):
    a = tmp_path / "k4.el"
    save_graph(complete_graph(4), a)
    code, out, _ = run(capsys, "pack", a, a, "--seed", 1)
    assert code == 3 and doc(out) == {"found": False, "guaranteed": False, "seed": 1}


def test_export(tmp_path, capsys):
    g = tmp_path / "g.json"
    run(capsys, "construct", "rb", 3, 4, "--out", g)
    code, out, _ = run(capsys, "export", g, "--out", tmp_path / "g.dot")
    assert code == 0 and doc(out)["format"] == "dot"
    jsonschema.validate(doc(out), load_schema("export"))
    assert (tmp_path / "g.dot").read_text().startswith("graph G {")
    code, _, _ = run(capsys, "export", g, "--out", tmp_path / "g.el")
    assert code == 0 and load_graph(tmp_path / "g.el") == load_graph(g)


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "--help")[0] == 0


def test_byte_identical_outputs(tmp_path, capsys):
    outs = []
    for i in range(2):
        p = tmp_path / f"g{i}.el"
        code, out, _ = run(capsys, "construct", "interval", 4, "--out", p)
        outs.append((out, p.read_bytes()))
        code, out, _ = run(capsys, "verify", p)
        outs.append((out, b""))
        q = tmp_path / f"p{i}.el"
        save_graph(cycle_graph(11), tmp_path / "c.el")
        save_graph(ColouredGraph.monochrome(11, [(0, 1), (2, 3), (4, 5)]), tmp_path / "m.el")
        run(capsys, "pack", tmp_path / "c.el", tmp_path / "m.el", "--seed", 3, "--out", q)
        outs.append(("", q.read_bytes()))
    assert outs[:3] == outs[3:]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "flipforge", "classify", "3", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["status"] == "feasible"
