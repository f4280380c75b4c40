import pytest
from hypothesis import given, settings, strategies as st

from a2tilde import grouppres as G, pds, tripres
from a2tilde.errors import (NotSInvariantError, UnknownGeneratorError,
                            UnsupportedFormatError)
from a2tilde.pds import DiffSet

D2 = DiffSet(2, (1, 2, 4))
T2 = tripres.construct(D2)


def test_gamma_T_q2():
    g = G.gamma_T(T2)
    assert len(g.generators) == 7 and len(g.relators) == 7
    want = {G.canonical_relator(((f"a{j}", 1), (f"a{(j + 1) % 7}", 1), (f"a{(j + 3) % 7}", 1)),
                                g.order_map) for j in range(7)}
    assert {G.canonical_relator(r, g.order_map) for r in g.relators} == want


def test_gamma_T_q3_has_cubes():
    g = G.gamma_T(tripres.construct(DiffSet(3, (0, 1, 3, 9))))
    assert len(g.generators) == 13
    assert (("a5", 3),) in g.relators


def test_extend_by_ps_q2():
    e = G.extend_by_ps(T2)
    assert len(e.generators) == 9
    for r in [(("s", 3),), (("p", 7),), (("s", 1), ("p", 1), ("s", -1), ("p", -2))]:
        assert r in e.relators
    assert e.metadata["order_ps"] == 21
    p = G.extend_by_p(T2)
    assert len(p.generators) == 8 and (("p", 7),) in p.relators


def test_shift_and_frobenius_preserve_relators():
    for D in (D2, DiffSet(4, (0, 1, 4, 14, 16)), DiffSet(5, (1, 5, 17, 22, 23, 25))):
        T = tripres.construct(D)
        v = D.v
        for pm in ([(x + 1) % v for x in range(v)], [D.q * x % v for x in range(v)]):
            assert tripres.image(T.classes, pm) == T.classes
    # a0 a1 a3 -> a1 a2 a4
    assert (1, 2, 4) in T2.classes


def test_s_extension_rejects_figure6(fig6):
    with pytest.raises(NotSInvariantError):
        G.extend_by_ps(fig6)


def test_singer_lattice_q2():
    s = G.singer_lattice(D2)
    assert s.generators == ("sigma0", "sigma1", "sigma2")
    assert len(s.relators) == 3 + 3
    assert (("sigma0", 2), ("sigma1", 2), ("sigma2", 2)) in s.relators
    assert (("sigma1", 7),) in s.relators


def test_singer_lattice_zero_exponent():
    s = G.singer_lattice(DiffSet(3, (0, 1, 3, 9)))
    assert (("sigma0", 13), ("sigma1", 13), ("sigma2", 13)) in s.relators


def test_singer_phi_values():
    # sigma_i -> 1 sends the diagonal relators to 3e and the powers to 0
    for D in (D2, DiffSet(3, (0, 1, 3, 9))):
        s = G.singer_lattice(D)
        got = sorted(G.hom_values(r, "phi", D.v) for r in s.relators)
        want = sorted([3 * (e or D.v) % D.v for e in D.elems] + [0, 0, 0])
        assert got == want


def test_chamber_triple_words():
    w = G.chamber_triple((0, 1, 3))
    assert w["sigma1"] == (("a0", 1), ("p", 1), ("a0", -1))
    assert w["sigma2"] == (("a3", -1), ("p", 1), ("a3", 1))
    # each realised sigma lies in ker Psi and has Phi = 1
    for word in w.values():
        assert G.hom_values(word, "Psi", 7) == 0
        assert G.hom_values(word, "Phi", 7) == 1


def test_rhombus_q2():
    r = G.rhombus_presentation(T2)
    assert len(r.generators) == 42
    assert ((("b0_1", 1), ("b1_0", 1))) in r.relators
    assert r.metadata["hexagon_tuples"] == 210


def test_hexagons_telescope():
    for D in (D2, DiffSet(3, (0, 1, 3, 9))):
        for T in tripres.enumerate_variants(D):
            full = T.full()
            for h in G.hexagons(T):
                assert h.members_ok(full)
                assert h.telescope() == []


def test_hexagon_relator_shape():
    h = G.hexagons(T2, include_degenerate=False)[0]
    t = h.triples
    # consecutive triples share the outer point or the line
    assert t[0][0] == t[5][0] and t[1][0] == t[2][0] and t[3][0] == t[4][0]
    assert t[0][2] == t[1][2] and t[2][2] == t[3][2] and t[4][2] == t[5][2]
    assert not h.degenerate
    assert len(G.expand_rhombus(h.relator)) == 6


def test_hom_values():
    assert G.hom_values((("a0", 1), ("a1", 1), ("a3", 1)), "Psi", 7) == 0
    assert G.hom_values((("p", 7),), "Phi", 7) == 0
    assert G.hom_values((("b1_2", 1),), "Psi", 7) == 0
    assert G.hom_values((("sigma0", 1), ("sigma2", -3)), "phi", 7) == 5
    with pytest.raises(UnknownGeneratorError):
        G.hom_values((("p", 1),), "psi", 7)
    with pytest.raises(UnknownGeneratorError):
        G.hom_values((("x", 1),), "Phi", 7)


def test_kernel_member():
    assert G.kernel_member((("b1_2", 1), ("b4_6", 1)), "psi", 7)
    assert not G.kernel_member((("a0", 1),), "psi", 7)
    assert G.kernel_member((("a0", 1), ("a1", 1), ("a3", 1)), "psi", 7)
    assert G.rhombus_factorization((("a0", 1), ("a1", 1), ("a3", 1))) is None
    assert G.rhombus_factorization((("a1", 1), ("a2", -1), ("a4", 1), ("a6", -1))) == [(1, 2), (4, 6)]


def test_export_gap_and_json():
    g = G.gamma_T(T2)
    text = G.export(g, "gap")
    assert text.count("\n") == 2
    assert text.startswith('F := FreeGroup("a0", "a1"')
    assert "G := F / [ a0*a1*a3," in text
    assert G.parse_gap(text) == g
    assert G.GroupPres.from_json(G.export(g, "json")) == g
    assert G.export(g, "gap") == text
    assert "quo<F" in G.export(g, "magma")
    with pytest.raises(UnsupportedFormatError):
        G.export(g, "xml")


def test_undeclared_generator_rejected():
    with pytest.raises(UnknownGeneratorError):
        G.GroupPres(("a0",), ((("a1", 1),),))


def test_abelianization_smoke():
    # Z7^3 modulo the diagonal relator sigma0 sigma1 sigma2
    assert G.abelianization(G.singer_lattice(D2)) == [7, 7]
    assert all(x != 1 for x in G.abelianization(G.gamma_T(T2)))


words = st.lists(st.tuples(st.sampled_from(["a0", "a1", "p"]), st.sampled_from([1, -1, 2])),
                 min_size=1, max_size=8).map(tuple)


@settings(max_examples=80, deadline=None)
@given(words, st.integers(0, 10))
def test_canonical_relator_invariant(w, k):
    order = {"a0": 0, "a1": 1, "p": 2}
    lets = G.letters(w)
    rot = lets[k % len(lets):] + lets[:k % len(lets)]
    key = G.canonical_relator(w, order)
    assert G.canonical_relator(G.syllables(rot), order) == key
    assert G.canonical_relator(G.inverse(w), order) == key


@settings(max_examples=80, deadline=None)
@given(words)
def test_free_reduce_idempotent(w):
    r = G.free_reduce(G.letters(w))
    assert G.free_reduce(r) == r
    assert G.free_reduce(G.letters(w) + G.letters(G.inverse(w))) == []
