"""Labeled defining graphs: parsing, validation, separating edges and isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import Counter
from typing import Iterable, Mapping


class GraphParseError(ValueError):
    """Raised when a graph file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class InvalidGraphError(ValueError):
    """Raised when an operation needs a validated graph and did not get one."""


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


class LabeledGraph:
    """Simple graph on named vertices with integer edge labels >= 2.

    Equality and hashing ignore vertex order; two graphs are equal when they
    have the same vertex set and the same labeled edges.
    """

    __slots__ = ("vertices", "_labels", "_adj", "_key")

    def __init__(self, vertices: Iterable[str], labels: Mapping[tuple[str, str], int]):
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex")
        known = set(vs)
        norm: dict[tuple[str, str], int] = {}
        adj: dict[str, dict[str, int]] = {v: {} for v in vs}
        for (a, b), m in labels.items():
            if a == b:
                raise ValueError(f"loop at {a}")
            if a not in known or b not in known:
                raise ValueError(f"unknown endpoint in edge {a}-{b}")
            if int(m) < 2:
                raise ValueError(f"label {m} < 2 on edge {a}-{b}")
            k = edge_key(a, b)
            if k in norm:
                raise ValueError(f"duplicate edge {a}-{b}")
            norm[k] = int(m)
            adj[a][b] = int(m)
            adj[b][a] = int(m)
        self.vertices = vs
        self._labels = norm
        self._adj = adj
        self._key = (frozenset(vs), frozenset(norm.items()))

    @property
    def labels(self) -> Mapping[tuple[str, str], int]:
        return self._labels

    def edges(self) -> list[tuple[str, str]]:
        return sorted(self._labels)

    def label(self, a: str, b: str) -> int | None:
        return self._adj[a].get(b)

    def neighbors(self, v: str) -> Mapping[str, int]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge(self, a: str, b: str) -> bool:
        return b in self._adj[a]

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LabeledGraph) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"LabeledGraph({len(self.vertices)} vertices, {len(self._labels)} edges)"

    def with_edges(self, labels: Mapping[tuple[str, str], int]) -> "LabeledGraph":
        return LabeledGraph(self.vertices, labels)

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {a} {b} {m}" for (a, b), m in sorted(self._labels.items())]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> LabeledGraph:
    """Parse the line-based graph format (``vertex`` / ``edge`` declarations)."""
    vertices: list[str] = []
    seen: set[str] = set()
    labels: dict[tuple[str, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2:
                raise GraphParseError("expected 'vertex <name>'", lineno)
            name = parts[1]
            if name in seen:
                raise GraphParseError(f"duplicate vertex {name!r}", lineno)
            seen.add(name)
            vertices.append(name)
        elif kind == "edge":
            if len(parts) != 4:
                raise GraphParseError("expected 'edge <a> <b> <label>'", lineno)
            a, b, lab = parts[1:]
            for v in (a, b):
                if v not in seen:
                    raise GraphParseError(f"unknown endpoint {v!r}", lineno)
            if a == b:
                raise GraphParseError(f"loop at {a!r}", lineno)
            try:
                m = int(lab)
            except ValueError:
                raise GraphParseError(f"label {lab!r} is not an integer", lineno) from None
            if m < 2:
                raise GraphParseError(f"label {m} < 2", lineno)
            k = edge_key(a, b)
            if k in labels:
                raise GraphParseError(f"duplicate edge {a}-{b}", lineno)
            labels[k] = m
        else:
            raise GraphParseError(f"unknown declaration {kind!r}", lineno)
    return LabeledGraph(vertices, labels)


def load_graph(path) -> LabeledGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# connectivity helpers

def components(g: LabeledGraph, removed: Iterable[str] = ()) -> list[frozenset[str]]:
    """Connected components of the induced subgraph on V minus ``removed``.

    Components are listed by their least vertex.
    """
    gone = set(removed)
    seen: set[str] = set()
    out = []
    for start in sorted(g.vertices):
        if start in gone or start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in gone and u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_connected_subset(g: LabeledGraph, subset: Iterable[str]) -> bool:
    sub = set(subset)
    if not sub:
        return False
    start = next(iter(sub))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            if u in sub and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(sub)


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    large_type: bool
    triangle_free: bool
    edge_separated: bool
    vertex_count_ok: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.connected and self.large_type and self.triangle_free
                and self.edge_separated and self.vertex_count_ok)

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "large_type": self.large_type,
            "triangle_free": self.triangle_free,
            "edge_separated": self.edge_separated,
            "vertex_count_ok": self.vertex_count_ok,
            "accepted": self.ok,
            "witnesses": {k: v for k, v in sorted(self.witnesses.items())},
        }


def find_triangle(g: LabeledGraph) -> tuple[str, str, str] | None:
    for a, b in g.edges():
        common = set(g.neighbors(a)) & set(g.neighbors(b))
        if common:
            return tuple(sorted((a, b, min(common))))
    return None


def separating_vertices(g: LabeledGraph) -> list[str]:
    """Vertices whose removal splits their component (V minus v disconnected when g is connected)."""
    base = len(components(g))
    return [v for v in sorted(g.vertices)
            if g.degree(v) > 0 and len(components(g, (v,))) > base]


def validate_clttf(g: LabeledGraph) -> ValidationReport:
    w: dict = {}
    comps = components(g)
    connected = len(comps) == 1
    if not connected:
        w["connected"] = [sorted(c) for c in comps[:2]]
    small = [(a, b, m) for (a, b), m in sorted(g.labels.items()) if m < 3]
    if small:
        w["large_type"] = list(small[0])
    tri = find_triangle(g)
    if tri:
        w["triangle_free"] = list(tri)
    cut = separating_vertices(g)
    if cut:
        w["edge_separated"] = cut[0]
    count_ok = len(g.vertices) >= 3
    if not count_ok:
        w["vertex_count_ok"] = len(g.vertices)
    return ValidationReport(connected, not small, tri is None, not cut, count_ok, w)


def require_valid(g: LabeledGraph) -> None:
    rep = validate_clttf(g)
    if not rep.ok:
        failed = [k for k, v in rep.to_json().items() if v is False]
        raise InvalidGraphError(f"graph rejected: {', '.join(failed)}")


def separating_edges(g: LabeledGraph) -> list[tuple[str, str]]:
    """Edges {s,t} whose removal (with endpoints) disconnects the graph."""
    require_valid(g)
    return [e for e in g.edges() if len(components(g, e)) > 1]


@dataclass(frozen=True)
class Decomposition:
    gamma1: frozenset[str]
    gamma0: tuple[str, str]
    gamma2: frozenset[str]


def decompositions_along(g: LabeledGraph, e: tuple[str, str]) -> list[Decomposition]:
    """All splits of V along the edge e, one per unordered grouping of components."""
    s, t = edge_key(*e)
    if not g.has_edge(s, t):
        raise ValueError(f"{s}-{t} is not an edge")
    comps = components(g, (s, t))
    if len(comps) < 2:
        raise ValueError(f"{s}-{t} is not a separating edge")
    out = []
    first, rest = comps[0], comps[1:]
    k = len(rest)
    # the group containing the first component is gamma1; iterate over the rest
    for mask in range(2 ** k - 1):
        side1 = set(first) | {s, t}
        side2 = {s, t}
        for i, c in enumerate(rest):
            (side1 if mask >> i & 1 else side2).update(c)
        out.append(Decomposition(frozenset(side1), (s, t), frozenset(side2)))
    return out


# permutations and isomorphisms

class Perm:
    """A permutation of a finite vertex set. ``p * q`` applies q first."""

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Mapping[str, str]):
        m = dict(mapping)
        if set(m.values()) != set(m):
            raise ValueError("not a permutation")
        self._map = m
        self._hash = hash(frozenset(m.items()))

    @classmethod
    def identity(cls, domain: Iterable[str]) -> "Perm":
        return cls({v: v for v in domain})

    @classmethod
    def from_cycles(cls, domain: Iterable[str], *cycles: Iterable[str]) -> "Perm":
        m = {v: v for v in domain}
        for cyc in cycles:
            c = list(cyc)
            for i, v in enumerate(c):
                m[v] = c[(i + 1) % len(c)]
        return cls(m)

    def __call__(self, v: str) -> str:
        return self._map[v]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm({v: self._map[other._map[v]] for v in other._map})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self._map == other._map

    def __hash__(self) -> int:
        return self._hash

    def inverse(self) -> "Perm":
        return Perm({b: a for a, b in self._map.items()})

    @property
    def domain(self) -> list[str]:
        return sorted(self._map)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self._map.items())

    def image_set(self, vs: Iterable[str]) -> frozenset[str]:
        return frozenset(self._map[v] for v in vs)

    def sort_key(self) -> tuple[str, ...]:
        return tuple(self._map[v] for v in sorted(self._map))

    def cycles(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for v in sorted(self._map):
            if v in seen or self._map[v] == v:
                continue
            cyc = [v]
            seen.add(v)
            u = self._map[v]
            while u != v:
                cyc.append(u)
                seen.add(u)
                u = self._map[u]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        n, p = 1, self
        while not p.is_identity():
            p = p * self
            n += 1
        return n

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(c) + ")" for c in cyc) if cyc else "()"

    def __repr__(self) -> str:
        return f"Perm{self}"


def apply_permutation(alpha: Perm, g: LabeledGraph) -> LabeledGraph:
    return g.with_edges({edge_key(alpha(a), alpha(b)): m for (a, b), m in g.labels.items()})


def _signature(g: LabeledGraph, v: str) -> tuple:
    return (g.degree(v), tuple(sorted(g.neighbors(v).values())))


def find_isomorphisms(g: LabeledGraph, h: LabeledGraph) -> list[Perm]:
    """All label-preserving bijections g -> h on the shared vertex set."""
    if set(g.vertices) != set(h.vertices):
        raise ValueError("vertex sets differ")
    if len(g.labels) != len(h.labels):
        return []
    if sorted(g.labels.values()) != sorted(h.labels.values()):
        return []
    sig_h: dict[tuple, list[str]] = {}
    for v in sorted(h.vertices):
        sig_h.setdefault(_signature(h, v), []).append(v)
    sig_g = {v: _signature(g, v) for v in g.vertices}
    if Counter(sig_g.values()) != Counter({k: len(v) for k, v in sig_h.items()}):
        return []

    # order: grow along edges so each new vertex has assigned neighbours
    order: list[str] = []
    placed: set[str] = set()
    remaining = set(g.vertices)
    while remaining:
        start = min(remaining, key=lambda v: (len(sig_h[sig_g[v]]), -g.degree(v), v))
        frontier = [start]
        placed.add(start)
        while frontier:
            v = frontier.pop(0)
            order.append(v)
            remaining.discard(v)
            for u in sorted(g.neighbors(v)):
                if u not in placed:
                    placed.add(u)
                    frontier.append(u)

    found: list[Perm] = []
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> None:
        if i == len(order):
            found.append(Perm(mapping))
            return
        v = order[i]
        for w in sig_h[sig_g[v]]:
            if w in used:
                continue
            ok = True
            for u, m in g.neighbors(v).items():
                if u in mapping and h.label(w, mapping[u]) != m:
                    ok = False
                    break
            if ok:
                # non-edges must map to non-edges; degrees already match, so
                # checking the mapped neighbour count suffices
                mapped_nbrs = sum(1 for u in g.neighbors(v) if u in mapping)
                mapped_imgs = sum(1 for x in h.neighbors(w) if x in used)
                if mapped_nbrs != mapped_imgs:
                    continue
                mapping[v] = w
                used.add(w)
                extend(i + 1)
                del mapping[v]
                used.discard(w)

    extend(0)
    found.sort(key=Perm.sort_key)
    return found


def swap(domain: Iterable[str], a: str, b: str) -> Perm:
    return Perm.from_cycles(domain, (a, b))
