"""Chunks, the chunk tree, its center and the inward/outward orientation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import LabeledGraph, components, edge_key, require_valid, separating_edges

CHUNK = "chunk"
EDGE = "edge"
INWARD = "inward"
OUTWARD = "outward"


def _vertex_order(vs: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(vs))


def chunks(g: LabeledGraph) -> list[frozenset[str]]:
    """Maximal indecomposable full subgraphs, as vertex sets.

    Start from the whole vertex set and split pieces along every separating
    edge; a piece meeting several components of V - {s,t} is replaced by its
    intersections with (component + {s,t}).  What survives, minus pieces
    contained in others, is exactly the set of chunks.
    """
    require_valid(g)
    pieces: set[frozenset[str]] = {frozenset(g.vertices)}
    for s, t in separating_edges(g):
        comps = components(g, (s, t))
        nxt: set[frozenset[str]] = set()
        for p in pieces:
            hit = [c for c in comps if p & c]
            if len(hit) <= 1:
                nxt.add(p)
                continue
            for c in hit:
                nxt.add(frozenset((p & c) | (p & {s, t})))
        pieces = nxt
    maximal = [p for p in pieces if not any(p < q for q in pieces)]
    return sorted(maximal, key=_vertex_order)


@dataclass(frozen=True)
class TwistEdgeRef:
    """An edge eps = (e, C) of the chunk tree, with its canonical ordinal."""

    index: int
    sep_edge: tuple[str, str]
    chunk: frozenset[str]
    orientation: str
    label: int
    sep_node: int
    chunk_node: int

    @property
    def parity(self) -> str:
        return "odd" if self.label % 2 else "even"

    @property
    def odd(self) -> bool:
        return self.label % 2 == 1

    @property
    def outward(self) -> bool:
        return self.orientation == OUTWARD

    def describe(self) -> str:
        s, t = self.sep_edge
        return f"eps{self.index}=({{{s},{t}}}, {{{','.join(sorted(self.chunk))}}})"


class ChunkTree:
    """Bipartite tree of chunks and separating edges, rooted at its center."""

    def __init__(self, g: LabeledGraph):
        require_valid(g)
        self.graph = g
        chunk_sets = chunks(g)
        seps = separating_edges(g)
        self.nodes: list[frozenset[str]] = list(chunk_sets) + [frozenset(e) for e in seps]
        self.kinds: list[str] = [CHUNK] * len(chunk_sets) + [EDGE] * len(seps)
        self.adj: list[list[int]] = [[] for _ in self.nodes]
        pairs = []
        for j, e in enumerate(seps):
            en = len(chunk_sets) + j
            for i, c in enumerate(chunk_sets):
                if set(e) <= c:
                    pairs.append((en, i))
                    self.adj[en].append(i)
                    self.adj[i].append(en)
        self._check_tree(len(pairs))
        self.center = self._find_center()
        self.depth = self._depths()
        self.tree_edges = self._index_edges()
        self._far: dict[int, frozenset[int]] = {
            eps.index: self._side(eps.chunk_node, eps.sep_node) for eps in self.tree_edges}

    # construction helpers

    def _check_tree(self, n_edges: int) -> None:
        n = len(self.nodes)
        assert n_edges == n - 1, "chunk graph is not a tree (edge count)"
        seen = {0}
        stack = [0]
        while stack:
            for u in self.adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        assert len(seen) == n, "chunk graph is not connected"
        for i, k in enumerate(self.kinds):
            if len(self.adj[i]) == 1:
                assert k == CHUNK, "a separating edge is a leaf of the chunk tree"
            if k == EDGE:
                assert len(self.adj[i]) >= 2
        for i in range(n):
            for j in range(i + 1, n):
                if self.kinds[i] == CHUNK and self.kinds[j] == CHUNK:
                    common = self.nodes[i] & self.nodes[j]
                    assert len(common) <= 2
                    if len(common) == 2:
                        assert frozenset(common) in self.nodes

    def _find_center(self) -> int:
        alive = set(range(len(self.nodes)))
        deg = {i: len(self.adj[i]) for i in alive}
        while len(alive) > 2:
            leaves = [i for i in alive if deg[i] <= 1]
            for i in leaves:
                alive.discard(i)
                for u in self.adj[i]:
                    if u in alive:
                        deg[u] -= 1
        assert len(alive) == 1, "chunk tree has two centers"
        return alive.pop()

    def _depths(self) -> list[int]:
        depth = [-1] * len(self.nodes)
        depth[self.center] = 0
        q = deque([self.center])
        while q:
            v = q.popleft()
            for u in self.adj[v]:
                if depth[u] < 0:
                    depth[u] = depth[v] + 1
                    q.append(u)
        return depth

    def _child_key(self, i: int) -> tuple[str, ...]:
        return _vertex_order(self.nodes[i])

    def _index_edges(self) -> list[TwistEdgeRef]:
        out: list[TwistEdgeRef] = []
        q = deque([self.center])
        seen = {self.center}
        while q:
            v = q.popleft()
            kids = sorted((u for u in self.adj[v] if u not in seen), key=self._child_key)
            for u in kids:
                seen.add(u)
                q.append(u)
                sep, ch = (v, u) if self.kinds[v] == EDGE else (u, v)
                s, t = sorted(self.nodes[sep])
                orient = OUTWARD if self.depth[ch] > self.depth[sep] else INWARD
                out.append(TwistEdgeRef(len(out) + 1, (s, t), self.nodes[ch], orient,
                                        self.graph.label(s, t), sep, ch))
        return out

    def _side(self, start: int, blocked: int) -> frozenset[int]:
        seen = {start}
        stack = [start]
        while stack:
            for u in self.adj[stack.pop()]:
                if u != blocked and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return frozenset(seen)

    # queries

    @property
    def center_kind(self) -> str:
        return self.kinds[self.center]

    @property
    def center_set(self) -> frozenset[str]:
        return self.nodes[self.center]

    def chunk_sets(self) -> list[frozenset[str]]:
        return [n for n, k in zip(self.nodes, self.kinds) if k == CHUNK]

    def far_nodes(self, eps: TwistEdgeRef) -> frozenset[int]:
        """Tree nodes on the chunk side after cutting eps."""
        return self._far[eps.index]

    def find_edge(self, sep_edge: Iterable[str], chunk: Iterable[str]) -> TwistEdgeRef:
        e = frozenset(sep_edge)
        c = frozenset(chunk)
        for eps in self.tree_edges:
            if frozenset(eps.sep_edge) == e and eps.chunk == c:
                return eps
        raise KeyError(f"no chunk-tree edge ({sorted(e)}, {sorted(c)})")

    def owns(self, eps: TwistEdgeRef) -> bool:
        return 0 < eps.index <= len(self.tree_edges) and self.tree_edges[eps.index - 1] == eps

    def outward(self) -> list[TwistEdgeRef]:
        return [e for e in self.tree_edges if e.outward]

    def to_json(self) -> dict:
        return {
            "nodes": [
                {"id": i, "kind": k, "vertices": sorted(n), "depth": self.depth[i]}
                for i, (n, k) in enumerate(zip(self.nodes, self.kinds))
            ],
            "center": self.center,
            "edges": [
                {"index": e.index, "sep_edge": list(e.sep_edge), "chunk": sorted(e.chunk),
                 "orientation": e.orientation, "parity": e.parity, "label": e.label}
                for e in self.tree_edges
            ],
        }


def chunk_tree(g: LabeledGraph) -> ChunkTree:
    return ChunkTree(g)


def center(t: ChunkTree) -> frozenset[str]:
    return t.center_set


def classify_edges(t: ChunkTree):
    """Split tree edges into (E_in, E_out, E_out_even, E_out_odd)."""
    e_in = [e for e in t.tree_edges if not e.outward]
    e_out = [e for e in t.tree_edges if e.outward]
    return (e_in, e_out, [e for e in e_out if not e.odd], [e for e in e_out if e.odd])


def export_dot(t: ChunkTree) -> str:
    def name(i: int) -> str:
        return "n" + str(i)

    lines = ["digraph chunk_tree {"]
    for i, (n, k) in enumerate(zip(t.nodes, t.kinds)):
        shape = "box" if k == CHUNK else "ellipse"
        label = ",".join(sorted(n))
        extra = ', peripheries=2, xlabel="center"' if i == t.center else ""
        lines.append(f'  {name(i)} [shape={shape}, label="{{{label}}}"{extra}];')
    for e in t.tree_edges:
        a, b = (e.sep_node, e.chunk_node) if e.outward else (e.chunk_node, e.sep_node)
        lines.append(f'  {name(a)} -> {name(b)} [label="eps{e.index} m={e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
