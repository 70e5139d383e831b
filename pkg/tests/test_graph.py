import networkx as nx
import pytest

import oracles
from clttf_aut.graph import (GraphParseError, InvalidGraphError, LabeledGraph, Perm,
                             apply_permutation, decompositions_along, edge_key,
                             find_isomorphisms, parse_graph, separating_edges,
                             separating_vertices, swap, validate_clttf)


def cycle(names, label=3):
    n = len(names)
    return {edge_key(names[i], names[(i + 1) % n]): label for i in range(n)}


def test_parse_minimal():
    g = parse_graph("vertex s\nvertex t\nedge s t 3\n")
    assert list(g.vertices) == ["s", "t"]
    assert g.edges() == [("s", "t")]
    assert g.label("t", "s") == 3


def test_parse_g13(G13):
    assert len(G13.vertices) == 13
    assert len(G13.edges()) == 17
    assert set(G13.labels.values()) == {3}


@pytest.mark.parametrize("text, line, fragment", [
    ("vertex s\nvertex t\nedge s t 1\n", 3, "label"),
    ("vertex s\nvertex s\n", 2, "duplicate vertex"),
    ("vertex s\nvertex t\nedge s t 3\nedge t s 4\n", 4, "duplicate edge"),
    ("vertex s\nedge s t 3\n", 2, "unknown endpoint"),
    ("vertex s\nvertex t\nedge s t x\n", 3, "integer"),
    ("vertex s\nnode t\n", 2, "unknown declaration"),
    ("vertex\n", 1, "expected"),
    ("vertex s\nedge s s 3\n", 2, "loop"),
])
def test_parse_errors(text, line, fragment):
    with pytest.raises(GraphParseError) as err:
        parse_graph(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_comments_and_roundtrip(G13):
    g = parse_graph("# header\nvertex a  # first\n\nvertex b\nedge b a 5\n")
    assert g.label("a", "b") == 5
    assert parse_graph(G13.to_text()) == G13


def test_fixtures_accepted(G6, G8, G13, GEVEN):
    for g in (G6, G8, G13, GEVEN):
        assert validate_clttf(g).ok


def test_triangle_rejected():
    g = LabeledGraph("abc", cycle("abc"))
    rep = validate_clttf(g)
    assert not rep.triangle_free and not rep.ok
    assert rep.witnesses["triangle_free"] == ["a", "b", "c"]
    assert rep.connected and rep.large_type and rep.vertex_count_ok


def test_cut_vertex_rejected():
    labels = cycle(["v", "a", "b", "c"]) | cycle(["v", "x", "y", "z"])
    rep = validate_clttf(LabeledGraph("vabcxyz", labels))
    assert not rep.edge_separated
    assert rep.witnesses["edge_separated"] == "v"
    assert separating_vertices(LabeledGraph("vabcxyz", labels)) == ["v"]


def test_other_flags():
    rep = validate_clttf(LabeledGraph("abcd", cycle("abcd", 2)))
    assert not rep.large_type and rep.witnesses["large_type"][2] == 2
    rep = validate_clttf(LabeledGraph("abcdxy", cycle("abcd") | {("x", "y"): 3}))
    assert not rep.connected
    rep = validate_clttf(LabeledGraph("st", {("s", "t"): 3}))
    assert not rep.vertex_count_ok and rep.witnesses["vertex_count_ok"] == 2


def test_separating_edges_examples(G13, G6):
    assert separating_edges(G13) == [("a", "d"), ("a", "i"), ("e", "i")]
    assert separating_edges(G6) == [("c", "f")]
    assert separating_edges(LabeledGraph("abcd", cycle("abcd"))) == []


def test_separating_edges_rejects_invalid():
    with pytest.raises(InvalidGraphError):
        separating_edges(LabeledGraph("abc", cycle("abc")))


def atlas_accepted(max_nodes=7):
    out = []
    for h in nx.graph_atlas_g():
        if 3 <= h.number_of_nodes() <= max_nodes and nx.is_connected(h):
            g = oracles.from_nx(h)
            if validate_clttf(g).ok:
                out.append(g)
    return out


def test_validation_against_networkx():
    # every connected atlas graph: flags agree with networkx predicates
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() < 3 or not nx.is_connected(h):
            continue
        g = oracles.from_nx(h)
        rep = validate_clttf(g)
        assert rep.triangle_free == (sum(nx.triangles(h).values()) == 0)
        assert rep.edge_separated == (not list(nx.articulation_points(h)))


def test_separating_edges_oracle():
    graphs = atlas_accepted()
    assert len(graphs) > 20
    for g in graphs:
        assert separating_edges(g) == oracles.separating_edges(g)


def test_decompositions(G13):
    decs = decompositions_along(G13, ("a", "i"))
    assert len(decs) == 3
    for d in decs:
        assert d.gamma1 | d.gamma2 == set(G13.vertices)
        assert d.gamma1 & d.gamma2 == {"a", "i"}
        assert len(d.gamma1) > 2 and len(d.gamma2) > 2
        for x, y in G13.edges():
            assert not ({x, y} <= (d.gamma1 | d.gamma2) and x in d.gamma1 - d.gamma2
                        and y in d.gamma2 - d.gamma1)
    assert len(decompositions_along(G13, ("a", "d"))) == 1
    with pytest.raises(ValueError):
        decompositions_along(G13, ("a", "b"))


def test_decompositions_match_oracle(G13, G8):
    for g in (G13, G8):
        ours = {(d.gamma1, d.gamma2) for e in separating_edges(g)
                for d in decompositions_along(g, e)}
        ours |= {(b, a) for a, b in ours}
        assert ours == set(oracles.decompositions(g))


def test_perm_basics():
    dom = "abcd"
    p = Perm.from_cycles(dom, "ab")
    q = Perm.from_cycles(dom, "bc")
    assert (p * q)("b") == "c"  # q first
    assert (p * q)("a") == "b"
    assert (p * q).order() == 3
    assert (p * p).is_identity()
    assert p.inverse() == p
    assert str(Perm.from_cycles(dom, "ab", "cd")) == "(a b)(c d)"
    assert Perm.identity(dom).cycles() == []


def test_apply_permutation(G6):
    h = apply_permutation(swap(G6.vertices, "d", "e"), G6)
    assert h.label("c", "e") == 6 and h.label("d", "f") == 6 and h.label("d", "e") == 4
    assert h != G6


def test_isomorphisms(G6, G13):
    assert [str(p) for p in find_isomorphisms(G6, G6)] == ["()"]
    autos = find_isomorphisms(G13, G13)
    assert sorted(str(p) for p in autos) == ["()", "(j l)(k m)"]
    for g in (G6, G13):
        assert len(find_isomorphisms(g, g)) == oracles.automorphism_count(g)


def test_isomorphisms_between_relabelled(G8):
    p = Perm.from_cycles(G8.vertices, "abcdefgh")
    h = apply_permutation(p, G8)
    found = find_isomorphisms(G8, h)
    assert p in found
    for q in found:
        assert apply_permutation(q, G8) == h
