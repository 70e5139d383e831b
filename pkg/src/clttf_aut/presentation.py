"""Generators, relation families, presentations and their verification.

Conventions used throughout:

* a word x1 x2 ... xk of generators denotes the composite x1 o x2 o ... o xk
  (the rightmost factor acts first);
* a vertex generator v stands for the inner automorphism u -> v u v^-1, so
  that the map from the Artin group to its inner automorphisms is a
  homomorphism.  With this choice the special automorphism Phi, which
  conjugates by x_e as u -> x_e^-1 u x_e, equals the inner element x_e^-1.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .autgroup import AutModel, ExtendedElement, aut_model, ext_compose, ext_inverse
from .chunktree import CHUNK
from .graph import LabeledGraph
from .smith import abelian_invariants
from .words import (ArtinWord, Verdict, alternating_product, compose_maps, conjugation_map,
                    identity_map, induced_map, maps_equal_bounded, quasi_center)

Word = ArtinWord  # words over generator names reuse the reduced-word type

VERTEX = "vertex"
EVEN_TWIST = "even_twist"
ODD_SQUARE = "odd_twist_square"
ISO_LIFT = "iso_lift"
INVERSION = "inversion"

FAMILIES = ("R0", "R1", "R2", "R3", "R4", "R_Phi", "R_Phi_tilde")


@dataclass(frozen=True)
class Gen:
    kind: str
    ref: object
    name: str


@dataclass(frozen=True)
class Relation:
    left: Word
    right: Word
    family: str

    def __str__(self) -> str:
        return f"{self.left} = {self.right}"

    def relator(self) -> Word:
        return self.left * self.right.inverse()

    def to_json(self) -> dict:
        return {"family": self.family, "left": self.left.to_json(), "right": self.right.to_json()}


@dataclass
class Presentation:
    group: str
    generators: list
    relations: list

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def check_words(self) -> None:
        known = set(self.names)
        for r in self.relations:
            for v, _ in r.left.letters + r.right.letters:
                assert v in known, f"relation uses unknown generator {v}"

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "generators": [{"name": g.name, "kind": g.kind} for g in self.generators],
            "relations": [r.to_json() for r in self.relations],
        }

    def to_cas(self) -> str:
        ids = _cas_identifiers(self.names)
        quoted = ", ".join(f'"{ids[n]}"' for n in self.names)
        lines = [f"# {self.group}: {len(self.names)} generators, "
                 f"{len(self.relations)} relations",
                 f"F := FreeGroup({quoted});",
                 "gens := GeneratorsOfGroup(F);"]
        lines += [f"{ids[n]} := gens[{i + 1}];" for i, n in enumerate(self.names)]
        rels = []
        for r in self.relations:
            toks = [ids[v] if e == 1 else f"{ids[v]}^-1" for v, e in r.relator().letters]
            rels.append("*".join(toks) if toks else "One(F)")
        lines.append("rels := [")
        lines += [f"  {x}," for x in rels[:-1]] + ([f"  {rels[-1]}"] if rels else [])
        lines.append("];")
        lines.append("G := F / rels;")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"group {self.group}", "generators: " + " ".join(self.names), "relations:"]
        lines += [f"  [{r.family}] {r}" for r in self.relations]
        return "\n".join(lines) + "\n"


def _cas_identifiers(names: list[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    used: set[str] = set()
    for n in names:
        base = re.sub(r"[^A-Za-z0-9_]", "_", n.replace("^2", "sq"))
        if not base or base[0].isdigit():
            base = "g_" + base
        cand, k = base, 1
        while cand in used:
            k += 1
            cand = f"{base}_{k}"
        used.add(cand)
        out[n] = cand
    return out


# relation families

@dataclass
class RelationSets:
    model: AutModel
    vertices: list
    twists: list
    lifts: list
    iota: Gen
    families: dict = field(default_factory=dict)

    @property
    def S(self) -> list:
        return self.twists + self.lifts

    def element(self, gen: Gen) -> ExtendedElement:
        m = self.model
        if gen.kind == EVEN_TWIST:
            return m.ext(m.twist(gen.ref, 1))
        if gen.kind == ODD_SQUARE:
            return m.ext(m.twist(gen.ref, 2))
        if gen.kind == ISO_LIFT:
            return m.ext(m.lift(gen.ref))
        if gen.kind == INVERSION:
            return m.iota()
        raise KeyError(gen.name)


def _w(*names: str) -> Word:
    return Word((n, 1) for n in names)


def _dedupe(rels: list[Relation]) -> list[Relation]:
    seen = set()
    out = []
    for r in rels:
        key = (r.left, r.right)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


@lru_cache(maxsize=64)
def relation_sets(g: LabeledGraph) -> RelationSets:
    m = aut_model(g)
    group = m.group
    verts = [Gen(VERTEX, v, v) for v in g.vertices]
    twists = []
    for pos, eps in enumerate(m.outward):
        if eps.odd:
            twists.append(Gen(ODD_SQUARE, pos, f"e{pos + 1}^2"))
        else:
            twists.append(Gen(EVEN_TWIST, pos, f"e{pos + 1}"))
    lifts = [Gen(ISO_LIFT, j, f"a{j}") for j in range(len(group))]
    iota = Gen(INVERSION, None, "iota")
    names = [x.name for x in verts + twists + lifts + [iota]]
    if len(set(names)) != len(names):
        raise ValueError("a vertex name collides with a generated generator name")
    rs = RelationSets(m, verts, twists, lifts, iota)

    tw = {x.ref: x.name for x in twists}
    odd_positions = [p for p, e in enumerate(m.outward) if e.odd]

    def squares(bits) -> Word:
        return _w(*(tw[p] for p, b in zip(odd_positions, bits) if b))

    r0 = []
    for (s, t), lab in sorted(g.labels.items()):
        r0.append(Relation(alternating_product(s, t, lab), alternating_product(t, s, lab), "R0"))
    for x in rs.S:
        img = induced_map(rs.element(x))
        for v in g.vertices:
            r0.append(Relation(_w(x.name, v), img[v] * _w(x.name), "R0"))
    for v in g.vertices:
        r0.append(Relation(_w("iota", v), Word.gen(v, -1) * _w("iota"), "R0"))

    r1 = [Relation(_w(x.name, y.name), _w(y.name, x.name), "R1")
          for x, y in combinations(twists, 2)]

    r2 = []
    for a in lifts:
        for x in twists:
            img = group.out_pos[group.pushforward_edge_index(a.ref, m.outward[x.ref].index)]
            r2.append(Relation(_w(a.name, x.name), _w(tw[img], a.name), "R2"))

    r3 = []
    for a in lifts:
        for b in lifts:
            ab = group.mul(a.ref, b.ref)
            corr = squares(group.twisted_product(a.ref, b.ref))
            r3.append(Relation(_w(a.name, b.name), corr * _w(lifts[ab].name), "R3"))

    r4 = [Relation(_w("iota", "iota"), Word(), "R4")]
    for a in lifts:
        r4.append(Relation(_w(a.name, "iota"),
                           squares(group.elements[a.ref].eta) * _w("iota", a.name), "R4"))
    for x in twists:
        r4.append(Relation(_w(x.name, "iota", x.name, "iota"), Word(), "R4"))

    phi_word = _phi_word(rs)
    r_phi, r_phi_t = [], []
    if phi_word is not None:
        r_phi.append(Relation(phi_word, Word(), "R_Phi"))
        s, t = sorted(m.tree.center_set)
        x = quasi_center((s, t), g.label(s, t))
        r_phi_t.append(Relation(phi_word, x.inverse(), "R_Phi_tilde"))

    rs.families = {"R0": _dedupe(r0), "R1": _dedupe(r1), "R2": _dedupe(r2), "R3": _dedupe(r3),
                   "R4": _dedupe(r4), "R_Phi": r_phi, "R_Phi_tilde": r_phi_t}
    return rs


def _phi_word(rs: RelationSets) -> Word | None:
    m = rs.model
    if m.tree.center_kind == CHUNK:
        return None
    s, t = sorted(m.tree.center_set)
    if m.graph.label(s, t) % 2 == 0:
        return _w(*(rs.twists[p].name for p in m.center_positions()))
    phi = m.special_phi().core
    return _w(rs.lifts[phi.alpha].name)


def artin_presentation(g: LabeledGraph) -> Presentation:
    rels = [Relation(alternating_product(s, t, m), alternating_product(t, s, m), "R0")
            for (s, t), m in sorted(g.labels.items())]
    return Presentation("A", [Gen(VERTEX, v, v) for v in g.vertices], rels)


def _assemble(name: str, gens: list, rs: RelationSets, fams: list[str]) -> Presentation:
    rels = [r for f in fams for r in rs.families[f]]
    p = Presentation(name, gens, rels)
    p.check_words()
    return p


def autA_presentation(g: LabeledGraph) -> Presentation:
    rs = relation_sets(g)
    return _assemble("Aut_A", rs.S, rs, ["R1", "R2", "R3"])


def autA_mod_Z_presentation(g: LabeledGraph) -> Presentation:
    rs = relation_sets(g)
    return _assemble("Aut_A/Z", rs.S, rs, ["R1", "R2", "R3", "R_Phi"])


def out_presentation(g: LabeledGraph) -> Presentation:
    rs = relation_sets(g)
    return _assemble("Out", rs.S + [rs.iota], rs, ["R1", "R2", "R3", "R4", "R_Phi"])


def aut_presentation(g: LabeledGraph) -> Presentation:
    rs = relation_sets(g)
    return _assemble("Aut", rs.vertices + rs.S + [rs.iota], rs,
                     ["R0", "R1", "R2", "R3", "R4", "R_Phi_tilde"])


PRESENTATIONS = {
    "aut": aut_presentation,
    "out": out_presentation,
    "autA": autA_presentation,
    "autA-mod-z": autA_mod_Z_presentation,
    "artin": artin_presentation,
}


def abelianization(p: Presentation) -> tuple[list[int], int]:
    col = {n: i for i, n in enumerate(p.names)}
    rows = []
    for r in p.relations:
        row = [0] * len(col)
        for v, e in r.relator().letters:
            row[col[v]] += e
        rows.append(row)
    return abelian_invariants(rows, len(col))


def format_abelian(inv: tuple[list[int], int]) -> str:
    torsion, rank = inv
    parts = [f"Z/{d}" for d in torsion] + ["Z"] * rank
    return " + ".join(parts) if parts else "0"


# verification

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


@dataclass(frozen=True)
class Check:
    family: str
    relation: str
    status: str
    method: str


@dataclass
class VerificationReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    def counts(self) -> dict:
        out: dict = {}
        for c in self.checks:
            fam = out.setdefault(c.family, {PASS: 0, FAIL: 0, UNKNOWN: 0})
            fam[c.status] += 1
        return out

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "counts": self.counts(),
            "problems": [c.__dict__ for c in self.checks if c.status != PASS],
        }

    def to_text(self) -> str:
        lines = []
        for fam, cnt in self.counts().items():
            lines.append(f"{fam:<14} pass {cnt[PASS]:>5}  fail {cnt[FAIL]:>3}  "
                         f"unknown {cnt[UNKNOWN]:>3}")
        for c in self.checks:
            if c.status != PASS:
                lines.append(f"  {c.status.upper()} [{c.family}] {c.relation} ({c.method})")
        lines.append("all relations verified" if self.ok else "verification FAILED")
        return "\n".join(lines) + "\n"


class _Evaluator:
    def __init__(self, rs: RelationSets, max_len: int | None, budget: int):
        self.rs = rs
        self.g = rs.model.graph
        self.max_len = max_len
        self.budget = budget
        self.by_name = {x.name: x for x in rs.vertices + rs.S + [rs.iota]}
        self._maps: dict = {}

    def element(self, word: Word) -> ExtendedElement:
        out = self.rs.model.ext(self.rs.model.identity())
        for v, e in word.letters:
            x = self.rs.element(self.by_name[v])
            out = ext_compose(out, x if e == 1 else ext_inverse(x))
        return out

    def letter_map(self, v: str, e: int) -> dict:
        key = (v, e)
        if key not in self._maps:
            gen = self.by_name[v]
            if gen.kind == VERTEX:
                self._maps[key] = conjugation_map(self.g, Word.gen(v, e))
            else:
                x = self.rs.element(gen)
                self._maps[key] = induced_map(x if e == 1 else ext_inverse(x))
        return self._maps[key]

    def word_map(self, word: Word) -> dict:
        out = identity_map(self.g)
        for v, e in word.letters:
            out = compose_maps(out, self.letter_map(v, e))
        return out

    def check_model(self, r: Relation) -> str:
        return PASS if self.element(r.left) == self.element(r.right) else FAIL

    def check_mod_phi(self, r: Relation) -> str:
        h = ext_compose(self.element(r.left), ext_inverse(self.element(r.right)))
        return PASS if self.rs.model.phi_power(h) is not None else FAIL

    def check_words(self, r: Relation) -> str:
        verdict = maps_equal_bounded(self.g, self.word_map(r.left), self.word_map(r.right),
                                     self.max_len, self.budget)
        return PASS if verdict is Verdict.EQUAL else UNKNOWN


def _method(family: str) -> str:
    return {"R1": "normal-form", "R2": "normal-form", "R3": "normal-form",
            "R4": "extended", "R_Phi": "modulo-Phi"}.get(family, "word-search")


def verify_relations(g: LabeledGraph, relations: list[Relation], max_len: int | None = None,
                     budget: int = 100_000) -> list[Check]:
    ev = _Evaluator(relation_sets(g), max_len, budget)
    out = []
    for r in relations:
        method = _method(r.family)
        if method in ("normal-form", "extended"):
            status = ev.check_model(r)
        elif method == "modulo-Phi":
            status = ev.check_mod_phi(r)
        else:
            status = ev.check_words(r)
        out.append(Check(r.family, str(r), status, method))
    return out


def verify_presentation(g: LabeledGraph, max_len: int | None = None, budget: int = 100_000,
                        seed: int = 0, spot_checks: int = 6) -> VerificationReport:
    """Check every relation in its model, plus word-level spot checks of R1-R4."""
    rs = relation_sets(g)
    checks = []
    for fam in FAMILIES:
        checks += verify_relations(g, rs.families[fam], max_len, budget)
    rng = random.Random(seed)
    pool = [r for fam in ("R1", "R2", "R3", "R4") for r in rs.families[fam]]
    sample = rng.sample(pool, min(spot_checks, len(pool)))
    ev = _Evaluator(rs, max_len, budget)
    for r in sample:
        checks.append(Check(r.family + "/words", str(r), ev.check_words(r), "word-search"))
    return VerificationReport(checks)


def structure_report(g: LabeledGraph) -> str:
    m = aut_model(g)
    tree = m.tree
    c = sorted(tree.center_set)
    lines = []
    if tree.center_kind == CHUNK:
        lines.append(f"center: chunk {{{','.join(c)}}}")
        lines.append("Z is trivial: the special automorphism is the identity")
        lines.append("Out = (Aut_A / Z) x| Z/2 = Aut_A x| Z/2")
        lines.append("Aut = Inn x| Out")
    else:
        s, t = c
        lab = g.label(s, t)
        x = quasi_center((s, t), lab)
        kind = "odd" if lab % 2 else "even"
        lines.append(f"center: {kind} separating edge {{{s},{t}}} with label {lab}")
        lines.append(f"Z = <Phi> is infinite cyclic; Phi acts as conjugation by x_e = {x}")
        if lab % 2:
            lines.append("Phi = twists on the center-adjacent edges composed with the swap "
                         f"({s} {t})")
        else:
            lines.append("Phi = product of the twists on the center-adjacent edges")
        lines.append("Out = (Aut_A / Z) x| Z/2")
    rs = relation_sets(g)
    lines.append(f"|Iso| = {len(m.group)}, |Aut(graph)| = {len(m.group.aut_subgroup)}, "
                 f"|E_out| = {len(m.outward)} ({sum(m.odd_mask)} odd)")
    for name, fn in (("Out", out_presentation), ("Aut_A", autA_presentation)):
        p = fn(g)
        lines.append(f"{name}: {len(p.names)} generators, {len(p.relations)} relations, "
                     f"abelianization {format_abelian(abelianization(p))}")
    sizes = ", ".join(f"{f} {len(rs.families[f])}" for f in FAMILIES)
    lines.append(f"relation families: {sizes}")
    return "\n".join(lines) + "\n"
