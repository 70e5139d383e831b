import io
import json

import pytest

from clttf_aut.cli import EXIT_INVALID, EXIT_OK, EXIT_PARSE, run
from clttf_aut.fixtures import fixture, fixture_text
from clttf_aut.graph import load_graph


@pytest.fixture
def graphs(tmp_path):
    paths = {}
    for name in ("G6", "G8", "G13", "GEVEN"):
        p = tmp_path / f"{name}.graph"
        p.write_text(fixture_text(name))
        paths[name] = str(p)
    tri = tmp_path / "triangle.graph"
    tri.write_text("vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\nedge a c 3\n")
    paths["triangle"] = str(tri)
    bad = tmp_path / "bad.graph"
    bad.write_text("vertex a\nedge a b 3\n")
    paths["bad"] = str(bad)
    return paths


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_validate(graphs):
    code, text = call("validate", graphs["G13"])
    assert code == EXIT_OK and "accepted: True" in text
    code, text = call("validate", graphs["triangle"], "--format", "json")
    assert code == EXIT_INVALID
    assert json.loads(text)["witnesses"]["triangle_free"] == ["a", "b", "c"]


def test_exit_codes(graphs, tmp_path):
    assert call("chunks", graphs["bad"])[0] == EXIT_PARSE
    assert call("chunks", str(tmp_path / "missing.graph"))[0] == EXIT_PARSE
    assert call("tree", graphs["triangle"])[0] == EXIT_INVALID
    with pytest.raises(SystemExit):
        call("verify", graphs["G6"], "--budget", "0")


def test_chunks_and_tree(graphs):
    code, text = call("chunks", graphs["G13"], "--format", "json")
    data = json.loads(text)
    assert code == 0 and len(data["chunks"]) == 5
    assert data["separating_edges"] == [["a", "d"], ["a", "i"], ["e", "i"]]
    code, text = call("tree", graphs["G13"])
    assert "|E_in|=3 |E_out|=4" in text
    code, text = call("tree", graphs["G6"], "--format", "dot")
    assert text.startswith("digraph")


def test_class_dump(graphs, tmp_path):
    out = tmp_path / "cls"
    code, text = call("class", graphs["G6"], "--out", str(out), "--format", "json")
    assert code == 0
    assert sorted(json.loads(text)["members"]) == ["00.graph", "01.graph", "10.graph", "11.graph"]
    assert load_graph(out / "00.graph") == fixture("G6")
    assert load_graph(out / "11.graph") != fixture("G6")


def test_iso_rigidity_phi(graphs):
    code, text = call("iso", graphs["G13"])
    assert "|Iso| = 32, |Aut| = 2" in text
    code, text = call("rigidity", graphs["G8"], "--format", "json")
    assert json.loads(text)["rigid"] is False
    code, text = call("phi", graphs["G6"], "--format", "json")
    d = json.loads(text)
    assert d["eta"] == [1, 1] and d["cycles"] == [["c", "f"]]


def test_presentation(graphs):
    code, text = call("presentation", graphs["G6"], "--group", "out", "--format", "json")
    d = json.loads(text)
    assert code == 0 and d["abelianization"] == {"torsion": [2, 2], "free_rank": 0}
    code, text = call("presentation", graphs["G6"], "--group", "aut", "--format", "cas")
    assert "FreeGroup(" in text
    code, text = call("presentation", graphs["G13"], "--group", "artin")
    assert "abelianization: Z" in text


def test_verify(graphs):
    code, text = call("verify", graphs["G13"])
    assert code == 0 and "all relations verified" in text
    code, text = call("verify", graphs["G6"], "--format", "json")
    d = json.loads(text)
    assert d["ok"] and d["problems"] == []


def test_verify_tiny_budget_fails(graphs):
    # a budget too small to close the word checks must not report success
    code, text = call("verify", graphs["G13"], "--budget", "1")
    assert code == 1 and "unknown" in text


def test_report(graphs):
    code, text = call("report", graphs["G8"])
    assert code == 0 and "center: chunk" in text


def test_deterministic_json(graphs):
    for cmd in ("iso", "tree", "presentation", "verify", "phi"):
        a = call(cmd, graphs["G13"], "--format", "json", "--seed", "3")[1]
        b = call(cmd, graphs["G13"], "--format", "json", "--seed", "3")[1]
        assert a == b
