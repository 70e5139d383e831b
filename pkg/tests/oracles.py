"""Brute-force reference implementations used only by the tests.

They work straight from the definitions with networkx and sympy and share
no code with the package beyond the graph container.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from clttf_aut.graph import LabeledGraph, edge_key


def to_nx(g: LabeledGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for (a, b), m in g.labels.items():
        h.add_edge(a, b, m=m)
    return h


def from_nx(h: nx.Graph, label: int = 3) -> LabeledGraph:
    names = {v: f"v{v}" for v in h.nodes}
    return LabeledGraph([names[v] for v in sorted(h.nodes)],
                        {edge_key(names[a], names[b]): label for a, b in h.edges})


def separating_edges(g: LabeledGraph) -> list[tuple[str, str]]:
    h = to_nx(g)
    out = []
    for a, b in h.edges:
        rest = h.subgraph(set(h.nodes) - {a, b})
        if rest.number_of_nodes() and not nx.is_connected(rest):
            out.append(edge_key(a, b))
    return sorted(out)


def decompositions(g: LabeledGraph) -> list[tuple[frozenset, frozenset]]:
    """Every (V1, V2) with V1 & V2 a single edge and no edge across."""
    h = to_nx(g)
    out = []
    for a, b in h.edges:
        rest = sorted(set(h.nodes) - {a, b})
        n = len(rest)
        for mask in range(1, 2 ** n - 1):
            side = {rest[i] for i in range(n) if mask >> i & 1}
            other = set(rest) - side
            if any(h.has_edge(x, y) for x in side for y in other):
                continue
            out.append((frozenset(side | {a, b}), frozenset(other | {a, b})))
    return out


def chunks(g: LabeledGraph) -> list[frozenset]:
    """Maximal connected vertex sets lying inside one side of every decomposition."""
    h = to_nx(g)
    decs = decompositions(g)
    good = []
    vs = sorted(h.nodes)
    for k in range(2, len(vs) + 1):
        for sub in combinations(vs, k):
            s = frozenset(sub)
            if all(s <= v1 or s <= v2 for v1, v2 in decs) and nx.is_connected(h.subgraph(s)):
                good.append(s)
    return sorted((s for s in good if not any(s < t for t in good)), key=sorted)


def twist_along(g: LabeledGraph, v2: frozenset, s: str, t: str) -> LabeledGraph:
    inner = v2 - {s, t}
    sw = {s: t, t: s}
    labels = {}
    for (a, b), m in g.labels.items():
        if a in inner and b in sw:
            b = sw[b]
        elif b in inner and a in sw:
            a = sw[a]
        labels[edge_key(a, b)] = m
    return LabeledGraph(g.vertices, labels)


def tree_center(g: LabeledGraph) -> frozenset:
    """Vertex set of the center of the chunk/separating-edge incidence tree."""
    cs = chunks(g)
    t = nx.Graph()
    t.add_nodes_from(cs + [frozenset(e) for e in separating_edges(g)])
    for e in separating_edges(g):
        for c in cs:
            if set(e) <= c:
                t.add_edge(frozenset(e), c)
    (mid,) = nx.center(t)
    return mid


def twist_orbit(g: LabeledGraph, away_from_center: bool = True,
                limit: int = 5000) -> set[LabeledGraph]:
    """Closure of g under twists along decompositions of every graph reached.

    With away_from_center only decompositions whose twisted side misses the
    center (or meets it in the separating edge itself) are used.
    """
    seen = {g}
    todo = [g]
    while todo:
        cur = todo.pop()
        mid = tree_center(cur) if away_from_center else frozenset()
        for v1, v2 in decompositions(cur):
            s, t = sorted(v1 & v2)
            if cur.label(s, t) % 2 == 0 or not mid <= v1:
                continue
            nxt = twist_along(cur, v2, s, t)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
                assert len(seen) <= limit
    return seen


def automorphism_count(g: LabeledGraph) -> int:
    h = to_nx(g)
    gm = nx.isomorphism.GraphMatcher(h, h, edge_match=lambda x, y: x["m"] == y["m"])
    return sum(1 for _ in gm.isomorphisms_iter())


def isomorphic(g: LabeledGraph, d: LabeledGraph) -> bool:
    return nx.is_isomorphic(to_nx(g), to_nx(d), edge_match=lambda x, y: x["m"] == y["m"])


def abelian_invariants(rows: list[list[int]], ncols: int) -> tuple[list[int], int]:
    """Torsion (> 1) and free rank from sympy's Smith normal form."""
    if not rows:
        return [], ncols
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d != 0]
    return sorted(d for d in nonzero if d > 1), ncols - len(nonzero)
