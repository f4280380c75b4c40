"""The link of a vertex, read off a triangle presentation.

out_i ~ in_k whenever some (i, j, k) lies in the rotation-closed triple set.
For a valid presentation this is the incidence graph of the plane.
"""

from __future__ import annotations

from dataclasses import dataclass

from .plane import (BipartiteGraph, bipartite_girth, incidence_graph,
                    is_bipartite_biregular)
from .tripres import TrianglePres


def build_link(T: TrianglePres) -> BipartiteGraph:
    v = T.v
    adj = {("out", i): set() for i in range(v)}
    adj.update({("in", k): set() for k in range(v)})
    for i, _, k in T.full():
        adj[("out", i)].add(("in", k))
        adj[("in", k)].add(("out", i))
    return BipartiteGraph(adj)


def edge_triangle_count(T: TrianglePres, i: int) -> int:
    return sum(1 for t in T.full() if t[0] == i % T.v)


def link_vertex_map(T: TrianglePres) -> dict:
    """out_i -> point i, in_k -> line alpha(k)."""
    v = T.v
    m = {("out", i): ("P", i) for i in range(v)}
    m.update({("in", k): ("L", T.alpha.table[k]) for k in range(v)})
    return m


def link_matches_incidence(T: TrianglePres, link: BipartiteGraph | None = None) -> bool:
    """Check the explicit map is an isomorphism onto the incidence graph."""
    link = link or build_link(T)
    inc = incidence_graph(T.alpha.plane)
    m = link_vertex_map(T)
    if len(set(m.values())) != len(m):
        return False
    mapped = {frozenset((m[a], m[b])) for a, b in link.edges}
    return mapped == {frozenset(e) for e in inc.edges}


@dataclass
class LinkReport:
    biregular: bool
    girth: float
    matches_incidence: bool
    edge_counts_ok: bool

    @property
    def ok(self) -> bool:
        return (self.biregular and self.girth == 6 and self.matches_incidence
                and self.edge_counts_ok)

    def to_json(self) -> dict:
        return {"biregular": self.biregular, "girth": self.girth,
                "matches_incidence": self.matches_incidence,
                "edge_counts_ok": self.edge_counts_ok, "ok": self.ok}


def check_link(T: TrianglePres) -> LinkReport:
    link = build_link(T)
    counts = [0] * T.v
    for t in T.full():
        counts[t[0]] += 1
    return LinkReport(is_bipartite_biregular(link, T.q + 1), bipartite_girth(link),
                      link_matches_incidence(T, link),
                      all(c == T.q + 1 for c in counts))


def six_cycles(g: BipartiteGraph) -> list[tuple]:
    """All simple 6-cycles, each once, as vertex tuples.

    A cycle is reported from its least vertex, going towards the smaller of
    its two neighbours on the cycle.
    """
    out = []
    for s in sorted(g.adj):
        def walk(path):
            x = path[-1]
            if len(path) == 6:
                if s in g.adj[x] and path[1] < path[-1]:
                    out.append(tuple(path))
                return
            for y in sorted(g.adj[x]):
                if y > s and y not in path:
                    path.append(y)
                    walk(path)
                    path.pop()
        walk([s])
    return out


def shift_link(g: BipartiteGraph, v: int) -> BipartiteGraph:
    """Relabel by i -> i+1 on both sides."""
    f = lambda x: (x[0], (x[1] + 1) % v)
    return BipartiteGraph({f(a): {f(b) for b in nb} for a, nb in g.adj.items()})


# number of hexagon tuples per link 6-cycle (three starting outer points,
# two directions) and of distinct relators after rotation/inversion
HEX_TUPLES_PER_CYCLE = 6
HEX_RELATORS_PER_CYCLE = 2
