"""Artin group words, elementary automorphisms and bounded word equality."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping

from . import kernel
from .graph import LabeledGraph, Perm, edge_key

Letter = tuple  # (vertex name, +1 | -1)


class ArtinWord:
    """A freely reduced word in the vertex generators."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        out: list[Letter] = []
        for v, e in letters:
            if e not in (1, -1):
                raise ValueError(f"exponent {e} is not +-1")
            if out and out[-1][0] == v and out[-1][1] == -e:
                out.pop()
            else:
                out.append((v, e))
        self.letters = tuple(out)

    @classmethod
    def gen(cls, v: str, e: int = 1) -> "ArtinWord":
        return cls(((v, e),))

    @classmethod
    def parse(cls, text: str) -> "ArtinWord":
        """Space separated tokens, ``v`` or ``v^-1``."""
        letters = []
        for tok in text.split():
            if tok.endswith("^-1"):
                letters.append((tok[:-3], -1))
            else:
                letters.append((tok, 1))
        return cls(letters)

    def __mul__(self, other: "ArtinWord") -> "ArtinWord":
        return ArtinWord(self.letters + other.letters)

    def inverse(self) -> "ArtinWord":
        return ArtinWord((v, -e) for v, e in reversed(self.letters))

    def reverse(self) -> "ArtinWord":
        return ArtinWord(reversed(self.letters))

    def substitute(self, images: Mapping[str, "ArtinWord"]) -> "ArtinWord":
        out: list[Letter] = []
        for v, e in self.letters:
            img = images[v]
            out.extend(img.letters if e == 1 else img.inverse().letters)
        return ArtinWord(out)

    def exponent_sums(self) -> dict[str, int]:
        sums: dict[str, int] = {}
        for v, e in self.letters:
            sums[v] = sums.get(v, 0) + e
        return sums

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ArtinWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(v if e == 1 else f"{v}^-1" for v, e in self.letters)

    def __repr__(self) -> str:
        return f"ArtinWord({str(self)!r})"

    def to_json(self) -> list:
        return [[v, e] for v, e in self.letters]


def alternating_product(s: str, t: str, m: int) -> ArtinWord:
    if m < 1:
        raise ValueError("m must be >= 1")
    return ArtinWord(((s, t)[i % 2], 1) for i in range(m))


def quasi_center(e: Iterable[str], m: int) -> ArtinWord:
    s, t = edge_key(*e)
    return alternating_product(s, t, m)


def center_word(e: Iterable[str], m: int) -> ArtinWord:
    x = quasi_center(e, m)
    return x * x if m % 2 else x


# elementary automorphisms

GRAPH_ISO = "graph_iso"
GLOBAL_INVERSION = "global_inversion"
INNER = "inner"
PARTIAL_CONJUGATION = "partial_conjugation"


@dataclass(frozen=True)
class ElementaryAuto:
    kind: str
    perm: Perm | None = None
    word: ArtinWord | None = None
    fixed: frozenset = frozenset()
    exponent: int = 1

    @classmethod
    def graph_iso(cls, alpha: Perm) -> "ElementaryAuto":
        return cls(GRAPH_ISO, perm=alpha)

    @classmethod
    def global_inversion(cls) -> "ElementaryAuto":
        return cls(GLOBAL_INVERSION)

    @classmethod
    def inner(cls, g: ArtinWord) -> "ElementaryAuto":
        return cls(INNER, word=g)

    @classmethod
    def partial_conjugation(cls, v1: Iterable[str], sep_edge: Iterable[str], m: int,
                            exponent: int = 1) -> "ElementaryAuto":
        """Fix V1 and conjugate the rest by x_e (exponent -1 gives the inverse map)."""
        v1 = frozenset(v1)
        if not set(sep_edge) <= v1:
            raise ValueError("the separating edge must lie in V1")
        return cls(PARTIAL_CONJUGATION, word=quasi_center(sep_edge, m), fixed=v1,
                   exponent=exponent)

    def image(self, v: str) -> ArtinWord:
        g = ArtinWord.gen(v)
        if self.kind == GRAPH_ISO:
            return ArtinWord.gen(self.perm(v))
        if self.kind == GLOBAL_INVERSION:
            return g.inverse()
        if self.kind == INNER:
            return self.word.inverse() * g * self.word
        if v in self.fixed:
            return g
        x = self.word
        return x.inverse() * g * x if self.exponent == 1 else x * g * x.inverse()


def apply_auto(a: ElementaryAuto, w: ArtinWord) -> ArtinWord:
    return ArtinWord(
        letter
        for v, e in w.letters
        for letter in (a.image(v).letters if e == 1 else a.image(v).inverse().letters)
    )


def apply_map(images: Mapping[str, ArtinWord], w: ArtinWord) -> ArtinWord:
    return w.substitute(images)


def compose_maps(outer: Mapping[str, ArtinWord],
                 inner: Mapping[str, ArtinWord]) -> dict[str, ArtinWord]:
    """outer after inner: v -> outer(inner(v))."""
    return {v: w.substitute(outer) for v, w in inner.items()}


def identity_map(g: LabeledGraph) -> dict[str, ArtinWord]:
    return {v: ArtinWord.gen(v) for v in g.vertices}


def conjugation_map(g: LabeledGraph, x: ArtinWord) -> dict[str, ArtinWord]:
    """v -> x v x^-1, the image of x under the identification A -> Inn(A)."""
    return {v: x * ArtinWord.gen(v) * x.inverse() for v in g.vertices}


# bounded equality

class Verdict(str, Enum):
    EQUAL = "equal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class _Rules:
    index: dict
    rules: list
    classes: dict
    m_max: int


@lru_cache(maxsize=256)
def _rules_for(g: LabeledGraph) -> _Rules:
    names = sorted(g.vertices)
    if len(names) > 127:
        raise ValueError("too many generators for the byte encoding")
    index = {v: i for i, v in enumerate(names)}

    def enc(w: ArtinWord) -> bytes:
        return bytes(2 * index[v] + (0 if e == 1 else 1) for v, e in w.letters)

    rules = set()
    for (s, t), m in g.labels.items():
        rel = enc(alternating_product(s, t, m) * alternating_product(t, s, m).inverse())
        for r in (rel, bytes(c ^ 1 for c in reversed(rel))):
            for i in range(len(r)):
                rot = r[i:] + r[:i]
                for k in range(1, len(rot)):
                    piece = rot[:k]
                    repl = bytes(c ^ 1 for c in reversed(rot[k:]))
                    rules.add((piece, repl))
    # odd edges identify their endpoints in the abelianization
    parent = {v: v for v in names}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (s, t), m in g.labels.items():
        if m % 2:
            parent[find(s)] = find(t)
    classes = {v: find(v) for v in names}
    m_max = max(g.labels.values(), default=2)
    return _Rules(index, sorted(rules), classes, m_max)


def encode(g: LabeledGraph, w: ArtinWord) -> bytes:
    index = _rules_for(g).index
    return bytes(2 * index[v] + (0 if e == 1 else 1) for v, e in w.letters)


def homology_class(g: LabeledGraph, w: ArtinWord) -> dict[str, int]:
    classes = _rules_for(g).classes
    out: dict[str, int] = {}
    for v, e in w.letters:
        c = classes[v]
        out[c] = out.get(c, 0) + e
    return {c: n for c, n in out.items() if n}


def default_max_len(g: LabeledGraph, w1: ArtinWord, w2: ArtinWord) -> int:
    return 4 * (len(w1) + len(w2) + 2 * _rules_for(g).m_max)


def word_equal_bounded(g: LabeledGraph, w1: ArtinWord, w2: ArtinWord,
                       max_len: int | None = None, budget: int = 100_000) -> Verdict:
    """Semi-decide w1 = w2 in the Artin group of g.

    EQUAL is returned only when a chain of relator substitutions reduces
    w1 w2^-1 to the empty word; otherwise UNKNOWN.
    """
    for v, _ in w1.letters + w2.letters:
        if v not in _rules_for(g).index:
            raise ValueError(f"{v!r} is not a generator")
    diff = w1 * w2.inverse()
    if not diff.letters:
        return Verdict.EQUAL
    if homology_class(g, diff):
        return Verdict.UNKNOWN
    if max_len is None:
        max_len = default_max_len(g, w1, w2)
    found, _ = kernel.active.search(encode(g, diff), _rules_for(g).rules, max_len, budget)
    return Verdict.EQUAL if found else Verdict.UNKNOWN


def maps_equal_bounded(g: LabeledGraph, f: Mapping[str, ArtinWord], h: Mapping[str, ArtinWord],
                       max_len: int | None = None, budget: int = 100_000) -> Verdict:
    for v in g.vertices:
        if f[v] == h[v]:
            continue
        if word_equal_bounded(g, f[v], h[v], max_len, budget) is not Verdict.EQUAL:
            return Verdict.UNKNOWN
    return Verdict.EQUAL


def induced_map(f) -> dict[str, ArtinWord]:
    """Images of the generators under the automorphism represented by f.

    f is an ExtendedElement (or a bare AutGElement).  The global inversion
    acts first, then alpha, then the twists in canonical order, each as a
    partial conjugation read off the graph reached so far.
    """
    from .autgroup import AutGElement, ExtendedElement

    if isinstance(f, AutGElement):
        f = ExtendedElement(f, 0)
    model = f.core.model
    g, fr = model.graph, model.frame
    sign = -1 if f.sign else 1
    iso = f.core.iso
    images = {v: ArtinWord.gen(iso.alpha(v), sign) for v in g.vertices}
    graph, state = fr.member(iso.eta)
    for pos, eps in enumerate(model.outward):
        k = f.core.eta[pos]
        for _ in range(abs(k)):
            v1, _ = fr.scope(state, eps)
            step = ElementaryAuto.partial_conjugation(v1, fr.sep_edge(state, eps), eps.label,
                                                      1 if k > 0 else -1)
            smap = {v: step.image(v) for v in g.vertices}
            images = {v: w.substitute(smap) for v, w in images.items()}
            graph, state = fr.twist(graph, state, eps)
    assert graph == g and state == fr.base_state, "twist word does not return to the base graph"
    return images
