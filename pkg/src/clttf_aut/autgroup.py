"""Normal-form model of the twist automorphism group.

An element is a pair (eta, alpha): alpha in Iso(G) carries G to a class
member D, and the twist word with integer exponents eta over E_out carries D
back to G.  ``f * g`` applies g first.  The parity of eta on odd edges must
equal the eta bits of alpha, otherwise the twist word would not end at G.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .chunktree import CHUNK
from .graph import LabeledGraph, Perm, swap
from .isogroup import IsoElement, IsoGroup, iso_group


class AmbientMismatch(ValueError):
    pass


@dataclass(frozen=True)
class AutGElement:
    eta: tuple
    alpha: int
    model: "AutModel" = field(compare=False, repr=False, hash=False)

    @property
    def iso(self) -> IsoElement:
        return self.model.group.elements[self.alpha]

    @property
    def perm(self) -> Perm:
        return self.iso.alpha

    def __mul__(self, other: "AutGElement") -> "AutGElement":
        return compose(self, other)

    def __pow__(self, k: int) -> "AutGElement":
        base = self if k >= 0 else inverse(self)
        out = self.model.identity()
        for _ in range(abs(k)):
            out = out * base
        return out

    def to_json(self) -> dict:
        return {"eta": list(self.eta), "alpha": self.alpha,
                "cycles": [list(c) for c in self.perm.cycles()]}


@dataclass(frozen=True)
class ExtendedElement:
    """core composed with the global inversion raised to ``sign``."""

    core: AutGElement
    sign: int = 0

    def __mul__(self, other: "ExtendedElement") -> "ExtendedElement":
        return ext_compose(self, other)

    def to_json(self) -> dict:
        d = self.core.to_json()
        d["sign"] = self.sign
        return d


class AutModel:
    def __init__(self, g: LabeledGraph):
        self.graph = g
        self.group: IsoGroup = iso_group(g)
        self.frame = self.group.frame
        self.tree = self.frame.tree
        self.outward = self.frame.outward
        self.odd_mask = tuple(e.odd for e in self.outward)

    def __repr__(self) -> str:
        return f"AutModel({self.graph!r})"

    def element(self, eta, alpha: int = 0) -> AutGElement:
        eta = tuple(int(x) for x in eta)
        if len(eta) != len(self.outward):
            raise ValueError(f"eta has {len(eta)} entries, expected {len(self.outward)}")
        bits = tuple(x % 2 for x, odd in zip(eta, self.odd_mask) if odd)
        if bits != self.group.elements[alpha].eta:
            raise ValueError("eta parity does not match the eta bits of alpha")
        return AutGElement(eta, alpha, self)

    def identity(self) -> AutGElement:
        return AutGElement((0,) * len(self.outward), 0, self)

    def twist(self, pos: int, power: int = 1) -> AutGElement:
        """A pure twist along the outward edge at position pos."""
        eta = [0] * len(self.outward)
        eta[pos] = power
        return self.element(eta)

    def lift(self, i: int) -> AutGElement:
        bits = iter(self.group.elements[i].eta)
        eta = [next(bits) if odd else 0 for odd in self.odd_mask]
        return AutGElement(tuple(eta), i, self)

    def center_positions(self) -> list[int]:
        """Outward edges adjacent to the center (empty when the center is a chunk)."""
        if self.tree.center_kind == CHUNK:
            return []
        return [p for p, e in enumerate(self.outward) if e.sep_node == self.tree.center]

    def special_phi(self) -> ExtendedElement:
        if self.tree.center_kind == CHUNK:
            return ExtendedElement(self.identity())
        eta = [0] * len(self.outward)
        for p in self.center_positions():
            eta[p] = 1
        alpha = 0
        s, t = sorted(self.tree.center_set)
        if self.graph.label(s, t) % 2:
            alpha = self.group.position(swap(self.graph.vertices, s, t))
        return ExtendedElement(self.element(eta, alpha))

    def iota(self) -> ExtendedElement:
        return ExtendedElement(self.identity(), 1)

    def ext(self, f: AutGElement, sign: int = 0) -> ExtendedElement:
        return ExtendedElement(f, sign % 2)

    def phi_power(self, h: ExtendedElement) -> int | None:
        """k with h = Phi^k, or None when h is not a power of Phi."""
        if h.sign:
            return None
        phi = self.special_phi().core
        pos = self.center_positions()
        if not pos:
            return 0 if h.core == self.identity() else None
        k = h.core.eta[pos[0]]
        return k if h.core == phi ** k else None


@lru_cache(maxsize=256)
def aut_model(g: LabeledGraph) -> AutModel:
    return AutModel(g)


def _same(f, g) -> None:
    if f.model is not g.model:
        raise AmbientMismatch("elements belong to different graphs")


def compose(f: AutGElement, g: AutGElement) -> AutGElement:
    _same(f, g)
    m = f.model
    pushed = m.group.push_out(f.alpha, g.eta)
    eta = tuple(a + b for a, b in zip(f.eta, pushed))
    return m.element(eta, m.group.mul(f.alpha, g.alpha))


def inverse(f: AutGElement) -> AutGElement:
    m = f.model
    a = m.group.inv(f.alpha)
    eta = tuple(-x for x in m.group.push_out(a, f.eta))
    return m.element(eta, a)


def negate(f: AutGElement) -> AutGElement:
    """Conjugate by the global inversion: twist exponents change sign."""
    return f.model.element(tuple(-x for x in f.eta), f.alpha)


def lift(model: AutModel, alpha: IsoElement) -> AutGElement:
    return model.lift(model.group.position(alpha.alpha))


def special_phi(g: LabeledGraph) -> ExtendedElement:
    return aut_model(g).special_phi()


def ext_compose(f: ExtendedElement, g: ExtendedElement) -> ExtendedElement:
    _same(f.core, g.core)
    core = g.core if not f.sign else negate(g.core)
    return ExtendedElement(compose(f.core, core), (f.sign + g.sign) % 2)


def ext_inverse(f: ExtendedElement) -> ExtendedElement:
    inv = inverse(f.core)
    return ExtendedElement(negate(inv) if f.sign else inv, f.sign)


def is_dehn(f: AutGElement) -> bool:
    return f.alpha == 0 and all(x % 2 == 0 for x, odd in zip(f.eta, f.model.odd_mask) if odd)
