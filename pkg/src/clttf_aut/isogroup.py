"""The group Iso(G) of permutations carrying G into its twist class."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .chunktree import TwistEdgeRef, chunk_tree
from .graph import LabeledGraph, Perm, apply_permutation, find_isomorphisms
from .twist import Bits, TwistFrame, bit_string, frame_of


@dataclass(frozen=True)
class IsoElement:
    """A permutation alpha with the eta bits of the twists carrying G to alpha(G)."""

    alpha: Perm
    eta: Bits = field(compare=False, hash=False)

    def __str__(self) -> str:
        return f"{self.alpha} [{bit_string(self.eta)}]"


def push_forward_edge(g: LabeledGraph, alpha: Perm, eps: TwistEdgeRef) -> TwistEdgeRef:
    """(alpha(e), alpha(C)) as an edge of the chunk tree of alpha(g)."""
    if not chunk_tree(g).owns(eps):
        raise ValueError(f"{eps.describe()} is not an edge of this chunk tree")
    target = chunk_tree(apply_permutation(alpha, g))
    out = target.find_edge(alpha.image_set(eps.sep_edge), alpha.image_set(eps.chunk))
    assert out.orientation == eps.orientation and out.label == eps.label
    return out


def pull_back_edge(g: LabeledGraph, alpha: Perm, eps: TwistEdgeRef) -> TwistEdgeRef:
    """Inverse of push_forward_edge: eps lives in the chunk tree of alpha(g)."""
    inv = alpha.inverse()
    h = apply_permutation(alpha, g)
    if not chunk_tree(h).owns(eps):
        raise ValueError(f"{eps.describe()} is not an edge of the image chunk tree")
    return chunk_tree(g).find_edge(inv.image_set(eps.sep_edge), inv.image_set(eps.chunk))


class IsoGroup:
    """Iso(G) as an explicit element list with composition table.

    Push-forwards act on the tree edges of the class, identified with the
    base tree through the frame states.
    """

    def __init__(self, g: LabeledGraph):
        self.base = g
        self.frame: TwistFrame = frame_of(g)
        tree = self.frame.tree
        self.tree = tree
        self.out_pos = {e.index: i for i, e in enumerate(self.frame.outward)}
        self.odd_pos = {e.index: i for i, e in enumerate(self.frame.odd)}

        elems: list[IsoElement] = []
        for bits in self.frame.all_bits():
            target = self.frame.member(bits)[0]
            for alpha in find_isomorphisms(g, target):
                elems.append(IsoElement(alpha, bits))
        self.elements = elems
        self.index = {e.alpha: i for i, e in enumerate(elems)}
        self.aut_subgroup = [i for i, e in enumerate(elems) if not any(e.eta)]
        assert elems and elems[0].alpha.is_identity()

        self._edge_map = [self._compute_edge_map(e) for e in elems]
        n = len(elems)
        self.table = [[self.index.get(elems[i].alpha * elems[j].alpha, -1) for j in range(n)]
                      for i in range(n)]
        for i in range(n):
            assert -1 not in self.table[i], "Iso(G) not closed under composition"
            assert elems[i].alpha.inverse() in self.index, "Iso(G) not closed under inverse"
            for j in range(n):
                # eta of a product is eta_a + a_*(eta_b) mod 2
                k = self.table[i][j]
                pushed = self.push_bits(i, elems[j].eta)
                assert tuple((x + y) % 2 for x, y in zip(elems[i].eta, pushed)) == elems[k].eta

    def _compute_edge_map(self, el: IsoElement) -> dict[int, int]:
        fr = self.frame
        target_state = fr.member(el.eta)[1]
        where = {vs: n for n, vs in enumerate(target_state)}
        node_map = [where[el.alpha.image_set(vs)] for vs in fr.base_state]
        by_nodes = {(e.sep_node, e.chunk_node): e for e in self.tree.tree_edges}
        out = {}
        for e in self.tree.tree_edges:
            img = by_nodes[(node_map[e.sep_node], node_map[e.chunk_node])]
            assert img.orientation == e.orientation and img.label == e.label
            out[e.index] = img.index
        return out

    def __len__(self) -> int:
        return len(self.elements)

    def element(self, alpha: Perm) -> IsoElement:
        return self.elements[self.index[alpha]]

    def position(self, alpha: Perm) -> int:
        return self.index[alpha]

    def pushforward_edge_index(self, i: int, tree_index: int) -> int:
        return self._edge_map[i][tree_index]

    def push_out(self, i: int, eta: tuple) -> tuple:
        """Transport a vector over E_out along element i."""
        out = [0] * len(eta)
        for e, pos in self.out_pos.items():
            out[self.out_pos[self._edge_map[i][e]]] = eta[pos]
        return tuple(out)

    def push_bits(self, i: int, bits: Bits) -> Bits:
        """Transport a vector over E_out_odd along element i."""
        out = [0] * len(bits)
        for e, pos in self.odd_pos.items():
            out[self.odd_pos[self._edge_map[i][e]]] = bits[pos]
        return tuple(out)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.index[self.elements[i].alpha.inverse()]

    def twisted_product(self, i: int, j: int) -> Bits:
        a, b = self.elements[i], self.elements[j]
        pushed = self.push_bits(i, b.eta)
        carry = tuple(x * y for x, y in zip(a.eta, pushed))
        ab = self.elements[self.table[i][j]].eta
        assert all(x + y - 2 * c == z for x, y, c, z in zip(a.eta, pushed, carry, ab))
        return carry

    def literal_product(self, i: int, j: int) -> Bits:
        """Pointwise product of the two eta vectors without any transport."""
        return tuple(x * y for x, y in zip(self.elements[i].eta, self.elements[j].eta))

    def product_discrepancies(self) -> list[tuple[int, int, int]]:
        """(i, j, tree index) where the transported and untransported carries differ."""
        out = []
        n = len(self.elements)
        for i in range(n):
            for j in range(n):
                good, lit = self.twisted_product(i, j), self.literal_product(i, j)
                for e, pos in self.odd_pos.items():
                    if good[pos] != lit[pos]:
                        out.append((i, j, e))
        return out

    def center(self) -> list[int]:
        n = len(self.elements)
        return [i for i in range(n) if all(self.table[i][j] == self.table[j][i] for j in range(n))]

    def element_order(self, i: int) -> int:
        return self.elements[i].alpha.order()

    def orbits(self) -> list[list[str]]:
        seen: set[str] = set()
        out = []
        for v in sorted(self.base.vertices):
            if v in seen:
                continue
            orb = sorted({e.alpha(v) for e in self.elements})
            seen.update(orb)
            out.append(orb)
        return out

    def to_json(self) -> dict:
        return {
            "order": len(self.elements),
            "aut_subgroup": self.aut_subgroup,
            "elements": [
                {"index": i, "cycles": [list(c) for c in e.alpha.cycles()],
                 "eta": bit_string(e.eta), "order": self.element_order(i)}
                for i, e in enumerate(self.elements)
            ],
            "table": self.table,
            "center": self.center(),
            "orbits": self.orbits(),
        }


@lru_cache(maxsize=256)
def iso_group(g: LabeledGraph) -> IsoGroup:
    return IsoGroup(g)


def twisted_product(group: IsoGroup, a: IsoElement, b: IsoElement) -> Bits:
    if a.alpha not in group.index or b.alpha not in group.index:
        raise ValueError("elements are not in this group")
    return group.twisted_product(group.position(a.alpha), group.position(b.alpha))
