import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from a2tilde import plane
from a2tilde.errors import NotAPdsError
from a2tilde.pds import DiffSet, units

FANO = plane.build_plane(DiffSet(2, (1, 2, 4)))


def to_nx(g):
    G = nx.Graph()
    G.add_edges_from(g.edges)
    return G


def test_fano_lines():
    assert FANO.line(0) == {1, 2, 4}
    assert FANO.line(3) == {4, 5, 0}
    assert FANO.v == 7 and len(FANO.lines) == 7


def test_build_plane_rejects():
    with pytest.raises(NotAPdsError):
        plane.build_plane(DiffSet(2, (0, 1, 2)))


@pytest.mark.parametrize("D", [DiffSet(2, (1, 2, 4)), DiffSet(3, (0, 1, 3, 9)),
                               DiffSet(4, (0, 1, 4, 14, 16)),
                               DiffSet(13, (0, 1, 13, 61, 67, 69, 107, 110, 132,
                                            139, 149, 160, 165, 169))])
def test_axioms(D):
    pl = plane.build_plane(D)
    rep = plane.check_axioms(pl)
    assert rep.ok
    assert all(len(L) == D.q + 1 for L in pl.lines)


def test_incidence_graph_sizes_and_girth():
    g = plane.incidence_graph(FANO)
    assert len(g.adj) == 14 and len(g.edges) == 21
    assert plane.girth(g) == 6 == plane.bipartite_girth(g)
    assert nx.girth(to_nx(g)) == 6
    g3 = plane.incidence_graph(plane.build_plane(DiffSet(3, (0, 1, 3, 9))))
    assert len(g3.adj) == 26 and len(g3.edges) == 52
    g4 = plane.incidence_graph(plane.build_plane(DiffSet(4, (0, 1, 4, 14, 16))))
    assert plane.girth(g4) == 6 == nx.girth(to_nx(g4))
    assert plane.is_bipartite_biregular(g4, 5)


def test_bipartite_girth_finds_four_cycle():
    adj = {("P", 0): {("L", 0), ("L", 1)}, ("P", 1): {("L", 0), ("L", 1)},
           ("L", 0): {("P", 0), ("P", 1)}, ("L", 1): {("P", 0), ("P", 1)}}
    g = plane.BipartiteGraph(adj)
    assert plane.bipartite_girth(g) == 4 == plane.girth(g)


def test_exports(tmp_path):
    g = plane.incidence_graph(FANO)
    plane.write_graph(g, tmp_path / "f.dot")
    plane.write_graph(g, tmp_path / "f.txt")
    assert (tmp_path / "f.dot").read_text().startswith("graph G {")
    assert len((tmp_path / "f.txt").read_text().splitlines()) == 21


def test_collineations():
    assert plane.check_collineation(FANO, plane.affine_collineation(FANO, 1, 1))
    assert plane.check_collineation(FANO, plane.affine_collineation(FANO, 2, 0))
    P013 = plane.build_plane(DiffSet(2, (0, 1, 3)))
    assert not plane.check_collineation(P013, plane.affine_collineation(P013, 2, 0))
    # 2 is a multiplier with shift 6, so moving lines by 6 repairs it
    assert plane.check_collineation(P013, plane.affine_collineation(P013, 2, 0, 6))


def test_correlation_q2():
    C = plane.build_correlation(FANO, 1)
    assert plane.check_correlation(FANO, C)
    # 1 on line 0: image of line 0 lies on image of point 1
    assert C.target.incident(C.line_map[0], C.point_map[1])
    with pytest.raises(ValueError):
        plane.build_correlation(plane.build_plane(DiffSet(4, (0, 1, 4, 14, 16))), 3)


def test_correlation_same_plane_target():
    # cD = D for multipliers c fixing D, so the plane itself is a valid target
    C = plane.build_correlation(FANO, 2, target=FANO)
    assert C.target is FANO and plane.check_correlation(FANO, C)


@pytest.mark.parametrize("D", [DiffSet(2, (1, 2, 4)), DiffSet(3, (0, 1, 3, 9)),
                               DiffSet(5, (1, 5, 17, 22, 23, 25))])
def test_every_unit_gives_correlation(D):
    pl = plane.build_plane(D)
    for c in units(D.v):
        assert plane.check_correlation(pl, plane.build_correlation(pl, c))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([1, 2, 4]), st.sampled_from([1, 2, 4]), st.integers(0, 6))
def test_two_correlations_compose_to_collineation(c1, c2, a):
    C1 = plane.build_correlation(FANO, c1, target=FANO)
    C2 = plane.build_correlation(FANO, c2, target=FANO)
    h = plane.compose(C2, C1)
    assert h.kind == "collineation" and plane.check_collineation(FANO, h)
    s = plane.affine_collineation(FANO, 1, a)
    assert plane.check_correlation(FANO, plane.compose(C1, s))
