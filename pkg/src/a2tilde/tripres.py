"""Triangle presentations built from perfect difference sets fixed by q.

A presentation is stored as its set of cyclic classes, each represented by
its lexicographically least rotation.  ``full()`` gives the rotation-closed
triple set.  The point-line correspondence is an index table into a cyclic
plane: ``alpha(i)`` is the line ``table[i] + D``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .errors import (InconsistentPresentationError, NotALineError,
                     NotEquivalentError, NotFixedByQError, TooLargeError)
from .pds import DiffSet, as_pds, units
from .plane import CyclicPlane, build_correlation

Triple = tuple[int, int, int]


def rotations(t: Triple) -> list[Triple]:
    a, b, c = t
    return [(a, b, c), (b, c, a), (c, a, b)]


def canonical(t: Triple) -> Triple:
    return min(rotations(t))


def rotation_closure(triples) -> set[Triple]:
    out = set()
    for t in triples:
        out.update(rotations(tuple(t)))
    return out


def class_set(triples) -> tuple[Triple, ...]:
    return tuple(sorted({canonical(tuple(t)) for t in triples}))


@dataclass(frozen=True)
class Alpha:
    """Point-line correspondence on a cyclic plane."""

    plane: CyclicPlane
    table: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.table) != list(range(self.plane.v)):
            raise ValueError("alpha must be a bijection onto line indices")

    @property
    def q(self) -> int:
        return self.plane.q

    @property
    def v(self) -> int:
        return self.plane.v

    def line(self, i: int) -> frozenset[int]:
        return self.plane.line(self.table[i % self.v])

    def point_sets(self) -> list[list[int]]:
        return [sorted(self.line(i)) for i in range(self.v)]

    @classmethod
    def standard(cls, D: DiffSet) -> "Alpha":
        """alpha(i) = i + D."""
        return cls(CyclicPlane(D), tuple(range(D.v)))

    @classmethod
    def from_point_sets(cls, sets, q: int | None = None) -> "Alpha":
        """Resolve listed point sets to line indices of the plane of alpha(0)."""
        sets = [frozenset(s) for s in sets]
        v = len(sets)
        q = q if q is not None else len(sets[0]) - 1
        D = as_pds(sets[0], q)
        plane = CyclicPlane(D)
        table = []
        for i, s in enumerate(sets):
            j = plane.index_of(s)
            if j is None:
                raise NotALineError(f"alpha({i}) = {sorted(s)} is not a line of "
                                    f"the plane of {list(D.elems)}")
            table.append(j)
        if v != D.v:
            raise InconsistentPresentationError("wrong number of points")
        return cls(plane, tuple(table))


@dataclass(frozen=True)
class TrianglePres:
    alpha: Alpha
    classes: tuple[Triple, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def q(self) -> int:
        return self.alpha.q

    @property
    def v(self) -> int:
        return self.alpha.v

    def full(self) -> set[Triple]:
        return rotation_closure(self.classes)

    def to_json(self) -> dict:
        out = {"q": self.q, "alpha": self.alpha.point_sets(),
               "classes": [list(t) for t in self.classes]}
        if self.meta:
            out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "TrianglePres":
        if isinstance(data, str):
            data = json.loads(data)
        alpha = Alpha.from_point_sets(data["alpha"], data.get("q"))
        return cls(alpha, class_set(data["classes"]), data.get("meta", {}))


# -- orbit decomposition ------------------------------------------------------

@dataclass(frozen=True)
class OrbitDecomp:
    D: DiffSet
    fixed_points: tuple[int, ...]
    triples: tuple[tuple[int, int, int], ...]

    @property
    def f(self) -> int:
        return len(self.fixed_points)

    @property
    def t(self) -> int:
        return len(self.triples)

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(sorted(self.fixed_points + tuple(o[0] for o in self.triples)))


def is_fixed_by(D: DiffSet, m: int) -> bool:
    return D.scale(m) == D


def orbit_decompose(D: DiffSet) -> OrbitDecomp:
    """Split D into fixed points and 3-orbits {d, qd, q^2 d} of x -> qx.

    Each orbit is listed as (d, qd, q^2 d) with d its least element.
    """
    q, v = D.q, D.v
    if not is_fixed_by(D, q):
        raise NotFixedByQError(f"{list(D.elems)} is not fixed by {q}")
    fixed, triples, seen = [], [], set()
    for d in D.elems:
        if d in seen:
            continue
        orb = (d, q * d % v, q * q * d % v)
        seen.update(orb)
        if orb[1] == d:
            fixed.append(d)
        else:
            triples.append(orb)
    assert len(fixed) + 3 * len(triples) == D.k
    return OrbitDecomp(D, tuple(fixed), tuple(triples))


# -- construction -------------------------------------------------------------

def family(d: int, m: int, v: int) -> list[Triple]:
    """The v triples (j, j + d, j + d + m d)."""
    return [(j, (j + d) % v, (j + d + m * d) % v) for j in range(v)]


def resolve_m_choice(decomp: OrbitDecomp, m_choice) -> tuple[int, ...]:
    """Normalise an m choice to one multiplier per 3-orbit.

    Accepts q, q^2 (as integers), the strings "q" / "q2", a bitmask string
    "MASK:<bits>" (bit i set means q^2 for orbit i), or a per-orbit sequence.
    """
    D = decomp.D
    mq, mq2 = D.q % D.v, D.q * D.q % D.v

    def one(x):
        if x in ("q", mq):
            return mq
        if x in ("q2", mq2):
            return mq2
        raise ValueError(f"m must be q={mq} or q^2={mq2}, got {x!r}")

    if isinstance(m_choice, str) and m_choice.startswith("MASK:"):
        bits = int(m_choice[5:], 2) if m_choice[5:] else 0
        return tuple(mq2 if bits >> i & 1 else mq for i in range(decomp.t))
    if isinstance(m_choice, (int, str)):
        return (one(m_choice),) * decomp.t
    ms = tuple(one(x) for x in m_choice)
    if len(ms) != decomp.t:
        raise ValueError(f"need {decomp.t} m choices, got {len(ms)}")
    return ms


def construct(D: DiffSet, m_choice="q") -> TrianglePres:
    """Triangle presentation compatible with alpha(i) = i + D.

    Only orbit representatives are expanded: each 3-orbit (d, ., .) with
    multiplier m contributes the v classes of (j, j + d, j + d + m d), each
    fixed point d the classes of (j, j + d, j + 2d).
    """
    decomp = orbit_decompose(D)
    ms = resolve_m_choice(decomp, m_choice)
    v = D.v
    classes = set()
    for d in decomp.fixed_points:
        classes.update(canonical(t) for t in family(d, 1, v))
    for orb, m in zip(decomp.triples, ms):
        classes.update(canonical(t) for t in family(orb[0], m, v))
    meta = {"base": list(D.elems), "m": list(ms)}
    return TrianglePres(Alpha.standard(D), tuple(sorted(classes)), meta)


def construct_direct(D: DiffSet, m: int) -> TrianglePres:
    """Union of the families of every element of D (no orbit binning)."""
    v = D.v
    full = set()
    for d in D.elems:
        full.update(family(d, m, v))
    return TrianglePres(Alpha.standard(D), class_set(full),
                        {"base": list(D.elems), "m": [m % v] * orbit_decompose(D).t})


def compress(T: TrianglePres) -> dict:
    """The O(q) data that determines a constructed presentation."""
    return {"q": T.q, "base": list(T.alpha.plane.base_line.elems),
            "m": list(T.meta.get("m", []))}


def decompress(data: dict) -> TrianglePres:
    D = DiffSet(data["q"], tuple(data["base"]))
    return construct(D, data["m"] if data.get("m") else "q")


# -- verification -------------------------------------------------------------

@dataclass
class VerifyResult:
    ok: bool
    condition: int | None = None
    witness: tuple | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def verify(T, alpha: Alpha | None = None, *, as_classes: bool = True) -> VerifyResult:
    """Check the three triangle-presentation axioms exhaustively.

    ``T`` is a TrianglePres or an iterable of triples.  With ``as_classes``
    the triples are class representatives and are closed under rotation
    first; otherwise they are taken literally as the full triple set.
    """
    if isinstance(T, TrianglePres):
        alpha = alpha or T.alpha
        triples = T.full()
    else:
        triples = {tuple(t) for t in T}
        if as_classes:
            triples = rotation_closure(triples)
    if alpha is None:
        raise ValueError("alpha required")
    v = alpha.v
    for t in sorted(triples):
        for r in rotations(t)[1:]:
            if r not in triples:
                return VerifyResult(False, 2, (t, r), f"{t} in T but {r} is not")
    third: dict[tuple[int, int], int] = {}
    for a, b, c in sorted(triples):
        if not (0 <= a < v and 0 <= b < v and 0 <= c < v):
            return VerifyResult(False, 1, (a, b, c), "point out of range")
        if (a, b) in third:
            return VerifyResult(False, 3, (a, b),
                                f"({a},{b}) completes to {third[(a, b)]} and {c}")
        third[(a, b)] = c
    for (a, b) in sorted(third):
        if b not in alpha.line(a):
            return VerifyResult(False, 1, (a, b), f"{b} is not on alpha({a})")
    for a in range(v):
        for b in sorted(alpha.line(a)):
            if (a, b) not in third:
                return VerifyResult(False, 1, (a, b),
                                    f"incident pair ({a},{b}) has no triple")
    return VerifyResult(True)


def extract_alpha(T, q: int | None = None) -> Alpha:
    """Recover alpha(a) = {b : (a, b, c) in T} as lines of a cyclic plane."""
    triples = T.full() if isinstance(T, TrianglePres) else rotation_closure(T)
    pts = sorted({x for t in triples for x in t})
    v = max(pts) + 1
    sets = [set() for _ in range(v)]
    seen = set()
    for a, b, c in triples:
        if (a, b) in seen:
            raise InconsistentPresentationError(f"pair ({a},{b}) is not unique")
        seen.add((a, b))
        sets[a].add(b)
    sizes = {len(s) for s in sets}
    if len(sizes) != 1:
        raise InconsistentPresentationError(f"alpha sets have sizes {sorted(sizes)}")
    return Alpha.from_point_sets(sets, q)


def enumerate_variants(D: DiffSet) -> list[TrianglePres]:
    """All 2^t per-orbit choices of q or q^2, deduplicated."""
    decomp = orbit_decompose(D)
    mq, mq2 = D.q % D.v, D.q * D.q % D.v
    out, seen = [], set()
    for ms in product((mq, mq2), repeat=decomp.t):
        T = construct(D, ms)
        if T.classes not in seen:
            seen.add(T.classes)
            out.append(T)
    return out


# -- brute force --------------------------------------------------------------

def brute_force_all(alpha: Alpha, max_q: int = 3) -> list[TrianglePres]:
    """Every triangle presentation compatible with ``alpha``.

    Backtracking over incident pairs (a, b): choosing c fixes the pairs
    (b, c) and (c, a) too.  The most constrained open pair goes first.
    """
    if alpha.q > max_q:
        raise TooLargeError(f"brute force limited to q <= {max_q}")
    v = alpha.v
    lines = [alpha.line(a) for a in range(v)]
    pairs = [(a, b) for a in range(v) for b in sorted(lines[a])]
    options = {(a, b): [c for c in sorted(lines[b]) if a in lines[c]]
               for (a, b) in pairs}
    assign: dict[tuple[int, int], int] = {}
    results = []

    def candidates(pr):
        a, b = pr
        out = []
        for c in options[pr]:
            if assign.get((b, c), a) != a or assign.get((c, a), b) != b:
                continue
            out.append(c)
        return out

    def search():
        open_pairs = [pr for pr in pairs if pr not in assign]
        if not open_pairs:
            results.append(class_set((a, b, c) for (a, b), c in assign.items()))
            return
        best, best_c = None, None
        for pr in open_pairs:
            cs = candidates(pr)
            if best is None or len(cs) < len(best_c):
                best, best_c = pr, cs
                if not cs:
                    return
        a, b = best
        for c in best_c:
            new = {pr for pr in ((a, b), (b, c), (c, a)) if pr not in assign}
            assign[(a, b)], assign[(b, c)], assign[(c, a)] = c, a, b
            search()
            for pr in new:
                del assign[pr]

    search()
    return [TrianglePres(alpha, cl) for cl in sorted(set(results))]


# -- equivalence --------------------------------------------------------------

@dataclass(frozen=True)
class EquivWitness:
    route: str  # "collineation" or "correlation"
    u: int
    a: int
    c: int | None = None

    def to_json(self) -> dict:
        return {"route": self.route, "u": self.u, "a": self.a, "c": self.c}


def image(classes, point_map) -> tuple[Triple, ...]:
    return class_set((point_map[x], point_map[y], point_map[z]) for x, y, z in classes)


def reversed_image(classes, point_map) -> tuple[Triple, ...]:
    return class_set((point_map[z], point_map[y], point_map[x]) for x, y, z in classes)


def correlation_image(T: TrianglePres, c: int) -> tuple[Triple, ...]:
    """C alpha (T^rev) for the correlation C of multiplier c.

    C sends line k to point -c k; composed with alpha this is a point map.
    """
    C = build_correlation(T.alpha.plane, c)
    ca = [C.line_map[T.alpha.table[x]] for x in range(T.v)]
    return reversed_image(T.classes, ca)


def _affine(u, a, v):
    return [(u * x + a) % v for x in range(v)]


def _search_affine(src: tuple[Triple, ...], dst: tuple[Triple, ...], v: int):
    target = set(dst)
    # the image of the least class must be some class of dst; pin a via it
    for u in units(v):
        for a in range(v):
            pm = _affine(u, a, v)
            first = canonical((pm[src[0][0]], pm[src[0][1]], pm[src[0][2]]))
            if first not in target:
                continue
            if image(src, pm) == dst:
                return u, a
    return None


def equivalent(T1: TrianglePres, T2: TrianglePres) -> EquivWitness:
    """Search h(T1) = T2, then h C alpha(T1^rev) = T2, over affine maps h.

    h ranges over x -> u x + a for every unit u and shift a; the correlation
    route uses C of multiplier 1 (other multipliers are absorbed by h).
    Raises NotEquivalentError when nothing in this family works, which is not
    a proof of inequivalence in general.
    """
    if T1.q != T2.q:
        raise NotEquivalentError("different orders")
    v = T1.v
    if len(T1.classes) != len(T2.classes):
        raise NotEquivalentError("different class counts")
    hit = _search_affine(T1.classes, T2.classes, v)
    if hit:
        w = EquivWitness("collineation", *hit)
    else:
        rev = correlation_image(T1, 1)
        hit = _search_affine(rev, T2.classes, v)
        if not hit:
            raise NotEquivalentError("no affine collineation or correlation found")
        w = EquivWitness("correlation", *hit, c=1)
    if not check_witness(T1, T2, w):  # pragma: no cover
        raise AssertionError(f"witness {w} does not re-verify")
    return w


def check_witness(T1: TrianglePres, T2: TrianglePres, w: EquivWitness) -> bool:
    pm = _affine(w.u, w.a, T1.v)
    if w.route == "collineation":
        return image(T1.classes, pm) == T2.classes
    src = correlation_image(T1, w.c)
    return image(src, pm) == T2.classes
