"""The cyclic projective plane of a perfect difference set.

Points are Z/vZ and line ``i`` is the point set i + D.  Lines are always
referred to by index; point sets only appear in verification.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import gcd
from pathlib import Path

from .errors import InvalidMapError, NotAPdsError
from .pds import DiffSet, multiplier_shift, verify_pds


@dataclass(frozen=True)
class CyclicPlane:
    base_line: DiffSet

    @property
    def q(self) -> int:
        return self.base_line.q

    @property
    def v(self) -> int:
        return self.base_line.v

    def line(self, i: int) -> frozenset[int]:
        return self.lines[i % self.v]

    @cached_property
    def lines(self) -> tuple[frozenset[int], ...]:
        v = self.v
        return tuple(frozenset((i + d) % v for d in self.base_line)
                     for i in range(v))

    @cached_property
    def line_index(self) -> dict[frozenset[int], int]:
        return {pts: i for i, pts in enumerate(self.lines)}

    def incident(self, x: int, i: int) -> bool:
        return (x - i) % self.v in self.base_line.elems

    def lines_through(self, x: int) -> list[int]:
        return sorted((x - d) % self.v for d in self.base_line)

    def index_of(self, pts) -> int | None:
        return self.line_index.get(frozenset(p % self.v for p in pts))


def build_plane(D: DiffSet) -> CyclicPlane:
    if not verify_pds(D.elems, D.q):
        raise NotAPdsError(f"{list(D.elems)} is not a perfect difference set")
    return CyclicPlane(D)


@dataclass
class AxiomReport:
    two_points_one_line: bool
    two_lines_one_point: bool
    quadrangle: tuple[int, int, int, int] | None
    line_sizes_ok: bool
    point_degrees_ok: bool

    @property
    def ok(self) -> bool:
        return (self.two_points_one_line and self.two_lines_one_point
                and self.quadrangle is not None and self.line_sizes_ok
                and self.point_degrees_ok)


def check_axioms(plane: CyclicPlane) -> AxiomReport:
    """Exhaustive check of the projective plane axioms."""
    v, k = plane.v, plane.q + 1
    lines = plane.lines
    cover = {}
    pts_ok = True
    for i, L in enumerate(lines):
        for a, b in combinations(sorted(L), 2):
            if (a, b) in cover:
                pts_ok = False
            cover[(a, b)] = i
    pts_ok = pts_ok and len(cover) == v * (v - 1) // 2
    lines_ok = all(len(lines[i] & lines[j]) == 1
                   for i, j in combinations(range(v), 2))
    sizes_ok = all(len(L) == k for L in lines)
    deg = [0] * v
    for L in lines:
        for x in L:
            deg[x] += 1
    return AxiomReport(pts_ok, lines_ok, find_quadrangle(plane), sizes_ok,
                       all(d == k for d in deg))


def collinear(plane: CyclicPlane, pts) -> bool:
    pts = set(pts)
    return any(pts <= L for L in plane.lines)


def find_quadrangle(plane: CyclicPlane):
    """First four points (lexicographic) with no three collinear."""
    for quad in combinations(range(plane.v), 4):
        if not any(collinear(plane, tri) for tri in combinations(quad, 3)):
            return quad
    return None


# -- incidence graph ----------------------------------------------------------

@dataclass(frozen=True)
class BipartiteGraph:
    """Undirected graph with vertices ('P', i) / ('L', j), or any two sides."""

    adj: dict

    @property
    def vertices(self):
        return list(self.adj)

    @property
    def edges(self):
        out = []
        for a, nbrs in self.adj.items():
            for b in nbrs:
                if a < b:
                    out.append((a, b))
        return sorted(out)

    def degrees(self) -> set[int]:
        return {len(n) for n in self.adj.values()}

    def to_edge_list(self) -> str:
        return "".join(f"{a[0]}{a[1]} {b[0]}{b[1]}\n" for a, b in self.edges)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for a in sorted(self.adj):
            shape = "circle" if a[0] in ("P", "out") else "box"
            lines.append(f'  "{a[0]}{a[1]}" [shape={shape}];')
        for a, b in self.edges:
            lines.append(f'  "{a[0]}{a[1]}" -- "{b[0]}{b[1]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def incidence_graph(plane: CyclicPlane) -> BipartiteGraph:
    adj = {}
    for x in range(plane.v):
        adj[("P", x)] = set()
    for j in range(plane.v):
        adj[("L", j)] = set()
    for j, L in enumerate(plane.lines):
        for x in L:
            adj[("P", x)].add(("L", j))
            adj[("L", j)].add(("P", x))
    return BipartiteGraph(adj)


def girth(g: BipartiteGraph) -> float:
    """Length of a shortest cycle, by BFS from every vertex."""
    best = float("inf")
    for s in g.adj:
        dist = {s: 0}
        parent = {s: None}
        dq = deque([s])
        while dq:
            x = dq.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    dq.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def _short_cycle_through(g: BipartiteGraph, s, limit: int) -> bool:
    dist, parent = {s: 0}, {s: None}
    dq = deque([s])
    while dq:
        x = dq.popleft()
        if 2 * dist[x] + 1 > limit:
            return False
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                parent[y] = x
                dq.append(y)
            elif parent[x] != y and dist[x] + dist[y] + 1 <= limit:
                return True
    return False


def bipartite_girth(g: BipartiteGraph) -> float:
    """Girth of a bipartite graph, fast when it is 4 or 6.

    Two vertices with two common neighbours give a 4-cycle; otherwise any
    cycle of length at most 6 found from some vertex pins the girth at 6.
    """
    pairs = set()
    for x in g.adj:
        nb = sorted(g.adj[x])
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                if (nb[i], nb[j]) in pairs:
                    return 4
                pairs.add((nb[i], nb[j]))
    for s in g.adj:
        if _short_cycle_through(g, s, 6):
            return 6
    return girth(g)


def is_bipartite_biregular(g: BipartiteGraph, degree: int) -> bool:
    sides = {a[0] for a in g.adj}
    if len(sides) != 2:
        return False
    for a, nbrs in g.adj.items():
        if len(nbrs) != degree or any(b[0] == a[0] for b in nbrs):
            return False
    return True


def write_graph(g: BipartiteGraph, path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("dot" if path.suffix == ".dot" else "edges")
    path.write_text(g.to_dot() if fmt == "dot" else g.to_edge_list())


# -- collineations and correlations ------------------------------------------

@dataclass(frozen=True)
class PlaneMap:
    """A bijection between planes.

    A collineation sends points to points and lines to lines; a correlation
    sends points to lines and lines to points.  ``point_map[x]`` and
    ``line_map[j]`` are indices into the target plane.
    """

    kind: str
    source: CyclicPlane
    target: CyclicPlane
    point_map: tuple[int, ...]
    line_map: tuple[int, ...]
    params: tuple = ()


def affine_collineation(plane: CyclicPlane, u: int, a: int,
                        line_shift: int = 0) -> PlaneMap:
    """Point x -> u*x + a, line j -> u*j + a + line_shift."""
    v = plane.v
    return PlaneMap("collineation", plane, plane,
                    tuple((u * x + a) % v for x in range(v)),
                    tuple((u * j + a + line_shift) % v for j in range(v)),
                    (u, a, line_shift))


def check_collineation(plane: CyclicPlane, h: PlaneMap) -> bool:
    """True iff h maps every incident (point, line) pair to an incident pair."""
    if h.kind != "collineation":
        return False
    tgt = h.target
    if len(set(h.point_map)) != plane.v or len(set(h.line_map)) != plane.v:
        return False
    return all(tgt.incident(h.point_map[x], h.line_map[j])
               for j, L in enumerate(plane.lines) for x in L)


def _first_reversal_failure(plane: CyclicPlane, C: PlaneMap):
    tgt = C.target
    for j, L in enumerate(plane.lines):
        for x in L:
            # x on line j  =>  point C(line j) on line C(x)
            if not tgt.incident(C.line_map[j], C.point_map[x]):
                return (x, j)
    return None


def check_correlation(plane: CyclicPlane, C: PlaneMap) -> bool:
    if C.kind != "correlation":
        return False
    if len(set(C.point_map)) != plane.v or len(set(C.line_map)) != plane.v:
        return False
    return _first_reversal_failure(plane, C) is None


def build_correlation(plane: CyclicPlane, c: int,
                      target: CyclicPlane | None = None) -> PlaneMap:
    """Correlation x -> line cD - cx, line D + k -> point -ck.

    The natural target is the plane of cD.  When ``target`` is another
    labelling (for example ``plane`` itself) the image line cD - cx must be
    a line of it, which holds iff cD is a shift of the target's base line.
    """
    v = plane.v
    if gcd(c, v) != 1:
        raise ValueError(f"gcd({c}, {v}) != 1")
    cD = plane.base_line.scale(c)
    if target is None:
        target = CyclicPlane(cD)
    s = multiplier_shift_between(cD, target.base_line)
    if s is None:
        raise InvalidMapError(
            f"{c}*D is not a shift of the target base line", witness=None)
    # line -cx + cD = (s - cx) + D_target
    point_map = tuple((s - c * x) % v for x in range(v))
    line_map = tuple((-c * k) % v for k in range(v))
    C = PlaneMap("correlation", plane, target, point_map, line_map, (c, s))
    bad = _first_reversal_failure(plane, C)
    if bad is not None:
        raise InvalidMapError(f"incidence reversal fails at point {bad[0]} "
                              f"on line {bad[1]}", witness=bad)
    return C


def multiplier_shift_between(A: DiffSet, B: DiffSet) -> int | None:
    """The s with A = s + B, if any."""
    for s in range(A.v):
        if B.shift(s) == A:
            return s
    return None


def compose(f: PlaneMap, g: PlaneMap) -> PlaneMap:
    """f after g.  Two correlations compose to a collineation."""
    if g.kind == "correlation":
        # points of g.source -> lines of g.target -> points/lines of f.target
        point_map = tuple(f.line_map[g.point_map[x]] for x in range(len(g.point_map)))
        line_map = tuple(f.point_map[g.line_map[j]] for j in range(len(g.line_map)))
    else:
        point_map = tuple(f.point_map[g.point_map[x]] for x in range(len(g.point_map)))
        line_map = tuple(f.line_map[g.line_map[j]] for j in range(len(g.line_map)))
    kind = "collineation" if f.kind == g.kind else "correlation"
    return PlaneMap(kind, g.source, f.target, point_map, line_map)


__all__ = [
    "AxiomReport", "BipartiteGraph", "CyclicPlane", "PlaneMap",
    "affine_collineation", "build_correlation", "build_plane",
    "check_axioms", "check_collineation", "check_correlation", "compose",
    "bipartite_girth", "girth", "incidence_graph", "is_bipartite_biregular", "multiplier_shift",
    "write_graph",
]
