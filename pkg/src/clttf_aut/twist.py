"""Edge-twists, twist classes and their eta coordinates.

A twist along an odd tree edge swaps s and t inside the far side, so the
vertex sets of chunks beyond it change.  To compose twists we keep the base
tree's node ids fixed and carry, for every graph reached, a *state*: the
current vertex set of each node.  Twisting applies the swap to the state of
every node on the far side.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .chunktree import ChunkTree, TwistEdgeRef, chunk_tree
from .graph import LabeledGraph, edge_key, find_isomorphisms

State = tuple  # tuple[frozenset[str], ...] indexed by tree node id
Bits = tuple  # tuple[int, ...] over E_out_odd in canonical order


def _swap_set(vs: frozenset[str], s: str, t: str) -> frozenset[str]:
    if (s in vs) == (t in vs):
        return vs
    return frozenset(t if v == s else s if v == t else v for v in vs)


class TwistFrame:
    """The twist class of a base graph, coordinatised by eta bits."""

    def __init__(self, g: LabeledGraph):
        self.base = g
        self.tree: ChunkTree = chunk_tree(g)
        self.outward: list[TwistEdgeRef] = self.tree.outward()
        self.odd: list[TwistEdgeRef] = [e for e in self.outward if e.odd]
        self.base_state: State = tuple(self.tree.nodes)
        self._members: dict[Bits, tuple[LabeledGraph, State]] = {}
        self._lookup: dict[LabeledGraph, Bits] | None = None

    @property
    def zero(self) -> Bits:
        return (0,) * len(self.odd)

    def scope(self, state: State, eps: TwistEdgeRef) -> tuple[frozenset[str], frozenset[str]]:
        far = self.tree.far_nodes(eps)
        v2 = frozenset().union(*(state[n] for n in far))
        near = [n for n in range(len(state)) if n not in far]
        v1 = frozenset().union(*(state[n] for n in near))
        return v1, v2

    def sep_edge(self, state: State, eps: TwistEdgeRef) -> tuple[str, str]:
        s, t = sorted(state[eps.sep_node])
        return s, t

    def twist(self, graph: LabeledGraph, state: State,
              eps: TwistEdgeRef) -> tuple[LabeledGraph, State]:
        if not eps.odd:
            return graph, state
        s, t = self.sep_edge(state, eps)
        _, v2 = self.scope(state, eps)
        inner = v2 - {s, t}
        sigma = {s: t, t: s}
        labels = {}
        for (a, b), m in graph.labels.items():
            if a in inner and b in sigma:
                b = sigma[b]
            elif b in inner and a in sigma:
                a = sigma[a]
            labels[edge_key(a, b)] = m
        far = self.tree.far_nodes(eps)
        new_state = tuple(_swap_set(vs, s, t) if n in far else vs for n, vs in enumerate(state))
        return graph.with_edges(labels), new_state

    def member(self, bits: Bits) -> tuple[LabeledGraph, State]:
        bits = tuple(int(b) % 2 for b in bits)
        if len(bits) != len(self.odd):
            raise ValueError(f"eta has {len(bits)} entries, expected {len(self.odd)}")
        if bits not in self._members:
            graph, state = self.base, self.base_state
            for eps, b in zip(self.odd, bits):
                if b:
                    graph, state = self.twist(graph, state, eps)
            self._members[bits] = (graph, state)
        return self._members[bits]

    def all_bits(self) -> list[Bits]:
        # first coordinate varies fastest
        return [tuple(reversed(p)) for p in product((0, 1), repeat=len(self.odd))]

    def lookup(self, d: LabeledGraph) -> Bits | None:
        if self._lookup is None:
            table = {}
            for bits in self.all_bits():
                graph = self.member(bits)[0]
                assert graph not in table, "two eta vectors give the same graph"
                table[graph] = bits
            self._lookup = table
        return self._lookup.get(d)


@lru_cache(maxsize=512)
def frame_of(g: LabeledGraph) -> TwistFrame:
    return TwistFrame(g)


def _own_edge(g: LabeledGraph, eps: TwistEdgeRef) -> TwistFrame:
    fr = frame_of(g)
    if not fr.tree.owns(eps):
        raise ValueError(f"{eps.describe()} is not an edge of this chunk tree")
    return fr


def scope(g: LabeledGraph, eps: TwistEdgeRef) -> tuple[frozenset[str], frozenset[str]]:
    fr = _own_edge(g, eps)
    return fr.scope(fr.base_state, eps)


def apply_twist(g: LabeledGraph, eps: TwistEdgeRef) -> LabeledGraph:
    fr = _own_edge(g, eps)
    return fr.twist(g, fr.base_state, eps)[0]


def apply_eta(g: LabeledGraph, bits: Bits) -> LabeledGraph:
    return frame_of(g).member(tuple(bits))[0]


def bit_string(bits: Bits) -> str:
    return "".join(str(b) for b in bits)


@dataclass(frozen=True)
class TwistClass:
    base: LabeledGraph
    members: dict

    def __len__(self) -> int:
        return len(self.members)


def twist_class(g: LabeledGraph) -> TwistClass:
    fr = frame_of(g)
    members = {bits: fr.member(bits)[0] for bits in fr.all_bits()}
    assert len(set(members.values())) == len(members), "eta -> graph is not injective"
    return TwistClass(g, members)


def normal_eta(g: LabeledGraph, d: LabeledGraph) -> Bits | None:
    """The eta bits carrying g to d, or None when d is not in g's class."""
    return frame_of(g).lookup(d)


@dataclass(frozen=True)
class RigidityReport:
    rigid: bool
    discretely_rigid: bool
    isomorphic_members: tuple

    def to_json(self) -> dict:
        return {"rigid": self.rigid, "discretely_rigid": self.discretely_rigid,
                "isomorphic_members": [bit_string(b) for b in self.isomorphic_members]}


def rigidity_report(g: LabeledGraph) -> RigidityReport:
    fr = frame_of(g)
    iso_bits = [b for b in fr.all_bits() if find_isomorphisms(g, fr.member(b)[0])]
    rigid = len(iso_bits) == 2 ** len(fr.odd)
    # a member isomorphic to g equals g only when its bits are zero
    discrete = iso_bits == [fr.zero]
    return RigidityReport(rigid, discrete, tuple(iso_bits))
