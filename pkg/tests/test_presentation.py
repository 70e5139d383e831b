from math import comb

import pytest

import oracles
from clttf_aut.autgroup import aut_model
from clttf_aut.presentation import FAMILIES, PRESENTATIONS, Relation, abelianization, \
    artin_presentation, autA_presentation, out_presentation, relation_sets, structure_report, \
    verify_presentation, verify_relations
from clttf_aut.smith import abelian_invariants, smith_diagonal
from clttf_aut.words import ArtinWord, Verdict, conjugation_map, induced_map, \
    maps_equal_bounded, quasi_center

NAMES = ["G6", "G8", "G13", "GEVEN"]


def relation_matrix(p):
    col = {n: i for i, n in enumerate(p.names)}
    rows = []
    for r in p.relations:
        row = [0] * len(col)
        for v, e in r.left.letters:
            row[col[v]] += e
        for v, e in r.right.letters:
            row[col[v]] -= e
        rows.append(row)
    return rows, len(col)


def test_artin_presentation(G6, G13):
    p = artin_presentation(G6)
    assert len(p.names) == 6 and len(p.relations) == 7
    p = artin_presentation(G13)
    assert len(p.names) == 13 and len(p.relations) == 17
    assert str(p.relations[0]) == "a b a = b a b"


@pytest.mark.parametrize("name", NAMES)
def test_family_sizes(name, request):
    g = request.getfixturevalue(name)
    rs = relation_sets(g)
    m = aut_model(g)
    n_iso, n_out, n_v = len(m.group), len(m.outward), len(g.vertices)
    fam = {f: len(rs.families[f]) for f in FAMILIES}
    assert fam["R1"] == comb(n_out, 2)
    assert fam["R2"] == n_iso * n_out
    assert fam["R3"] == n_iso ** 2
    assert fam["R4"] == 1 + n_iso + n_out
    assert fam["R0"] == len(g.labels) + (n_out + n_iso) * n_v + n_v
    edge_center = m.tree.center_kind == "edge"
    assert fam["R_Phi"] == fam["R_Phi_tilde"] == (1 if edge_center else 0)


def test_g13_family_sizes(G13):
    fam = {f: len(v) for f, v in relation_sets(G13).families.items()}
    assert fam == {"R0": 498, "R1": 6, "R2": 128, "R3": 1024, "R4": 37,
                   "R_Phi": 0, "R_Phi_tilde": 0}


def test_generator_names(G6, GEVEN):
    assert out_presentation(G6).names == ["e1^2", "e2^2", "a0", "a1", "a2", "a3", "iota"]
    assert autA_presentation(GEVEN).names[:2] == ["e1", "e2"]


@pytest.mark.parametrize("name", NAMES)
def test_verify_all_pass(name, request):
    rep = verify_presentation(request.getfixturevalue(name))
    assert rep.ok, rep.to_text()
    counts = rep.counts()
    assert all(c["fail"] == 0 and c["unknown"] == 0 for c in counts.values())
    assert any(f.endswith("/words") for f in counts)


def test_mutation_detected(G6):
    rs = relation_sets(G6)
    good = rs.families["R3"][5]
    bad = Relation(good.left, good.right * ArtinWord.gen("e1^2"), "R3")
    (check,) = verify_relations(G6, [bad])
    assert check.status == "fail"
    bad4 = Relation(ArtinWord.gen("iota"), ArtinWord(), "R4")
    assert verify_relations(G6, [bad4])[0].status == "fail"


def test_mutated_r0_not_verified(G6):
    # a wrong action relation never passes the word check
    bad = Relation(ArtinWord.parse("a1 a"), ArtinWord.parse("a a1"), "R0")
    assert verify_relations(G6, [bad], budget=5000)[0].status == "unknown"


def test_phi_sign_convention(G6):
    # Phi equals the inner element x_e^-1 in the vertex convention; x_e itself does not verify
    rs = relation_sets(G6)
    (rel,) = rs.families["R_Phi_tilde"]
    x = quasi_center(("c", "f"), 3)
    assert rel.right == x.inverse()
    literal = Relation(rel.left, x, "R_Phi_tilde")
    assert verify_relations(G6, [literal], budget=5000)[0].status == "unknown"


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("group", ["out", "autA", "autA-mod-z", "aut", "artin"])
def test_abelianization_oracle(name, group, request):
    p = PRESENTATIONS[group](request.getfixturevalue(name))
    rows, n = relation_matrix(p)
    assert abelianization(p) == oracles.abelian_invariants(rows, n)


def test_abelianization_values(G6, G13, G8, GEVEN):
    assert abelianization(out_presentation(G6)) == ([2, 2], 0)
    assert abelianization(out_presentation(G13)) == ([2] * 5, 0)
    assert abelianization(out_presentation(G8)) == ([2] * 3, 0)
    assert abelianization(out_presentation(GEVEN)) == ([2] * 4, 0)


def test_reduced_form_anchors(G6):
    # Z x| Z/2 abelianizes to Z/2 + Z/2, the same as the emitted Out(G6)
    rows = [[0, 2], [2, 0]]  # t^2 and t a t^-1 a
    assert oracles.abelian_invariants(rows, 2) == ([2, 2], 0)
    assert abelian_invariants(rows, 2) == ([2, 2], 0)


def test_smith_small():
    assert abelian_invariants([], 1) == ([], 1)
    assert smith_diagonal([[2, 4], [6, 8]], 2) == [2, 4]
    assert abelian_invariants([[4, 6]], 2) == ([2], 1)
    assert abelian_invariants([[0, 0]], 2) == ([], 2)


def test_smith_random_against_sympy():
    import random
    rng = random.Random(0)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        assert abelian_invariants(rows, c) == oracles.abelian_invariants(rows, c)


def test_phi_inner_edge_center(G6, GEVEN):
    for g in (G6, GEVEN):
        m = aut_model(g)
        s, t = sorted(m.tree.center_set)
        x = quasi_center((s, t), g.label(s, t))
        phi = induced_map(m.special_phi())
        assert maps_equal_bounded(g, phi, conjugation_map(g, x.inverse())) is Verdict.EQUAL


def test_dehn_not_inner_chunk_center(G8, G13):
    # small Dehn elements do not act as conjugation by the identity or a quasi-center power
    from itertools import product
    for g in (G8, G13):
        m = aut_model(g)
        cands = [ArtinWord()]
        for (s, t), lab in g.labels.items():
            x = quasi_center((s, t), lab)
            cands += [x, x.inverse()]
        for eta in product(range(-2, 3), repeat=len(m.outward)):
            if sum(map(abs, eta)) == 0 or sum(map(abs, eta)) > 2:
                continue
            if any(e % 2 for e, odd in zip(eta, m.odd_mask) if odd):
                continue
            img = induced_map(m.element(eta))
            for w in cands:
                assert maps_equal_bounded(g, img, conjugation_map(g, w),
                                          budget=500) is Verdict.UNKNOWN


def test_exports(G6):
    p = out_presentation(G6)
    cas = p.to_cas()
    assert 'F := FreeGroup("e1sq", "e2sq", "a0", "a1", "a2", "a3", "iota");' in cas
    assert cas.rstrip().endswith("G := F / rels;")
    assert cas.count("\n  ") == len(p.relations)
    d = p.to_json()
    assert d["group"] == "Out" and len(d["relations"]) == len(p.relations)
    assert "relations:" in p.to_text()


def test_structure_report(G6, G8, GEVEN):
    assert "center: chunk" in structure_report(G8)
    assert "Aut = Inn x| Out" in structure_report(G8)
    text = structure_report(G6)
    assert "odd separating edge {c,f}" in text and "infinite cyclic" in text
    assert "even separating edge {s,t}" in structure_report(GEVEN)
