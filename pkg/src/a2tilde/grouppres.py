"""Finite presentations of the groups attached to a triangle presentation.

Words are tuples of ``(generator, exponent)`` syllables.  Generator names:
``a<i>`` for the triangle generators, ``p`` and ``s`` for the shift and the
Frobenius map, ``sigma0..2`` for the Singer lattice and ``b<i>_<j>`` for the
rhombus elements a_i a_j^-1.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import NotSInvariantError, UnknownGeneratorError, UnsupportedFormatError
from .pds import DiffSet
from .tripres import TrianglePres, image

Word = tuple[tuple[str, int], ...]

KINDS = ("gamma_T", "gamma_T_p", "gamma_T_tilde", "singer", "rhombus")


class NotPInvariantError(NotSInvariantError):
    pass


# -- words --------------------------------------------------------------------

def letters(word) -> list[tuple[str, int]]:
    out = []
    for g, e in word:
        out.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return out


def free_reduce(lets) -> list[tuple[str, int]]:
    out = []
    for g, e in lets:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return out


def syllables(lets) -> Word:
    out = []
    for g, e in lets:
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + e)
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def inverse(word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def cyclic_reduce(lets) -> list[tuple[str, int]]:
    lets = free_reduce(lets)
    while len(lets) > 1 and lets[0][0] == lets[-1][0] and lets[0][1] == -lets[-1][1]:
        lets = lets[1:-1]
    return lets


def canonical_relator(word, order: dict[str, int]) -> tuple:
    """Least rotation of the word or its inverse, as a letter sequence key."""
    lets = cyclic_reduce(letters(word))
    if not lets:
        return ()
    keyed = [(order[g], e) for g, e in lets]
    inv = [(g, -e) for g, e in reversed(keyed)]
    n = len(keyed)
    return min(tuple(s[i:] + s[:i]) for s in (keyed, inv) for i in range(n))


def word_str(word, mult: str = "*") -> str:
    if not word:
        return "<identity>"
    return mult.join(g if e == 1 else f"{g}^{e}" for g, e in word)


# -- presentations ------------------------------------------------------------

@dataclass(frozen=True)
class GroupPres:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    kind: str = "gamma_T"
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            for g, _ in r:
                if g not in gens:
                    raise UnknownGeneratorError(g)

    @property
    def order_map(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.generators)}

    def to_json(self) -> dict:
        return {"kind": self.kind, "generators": list(self.generators),
                "relators": [[[g, e] for g, e in r] for r in self.relators],
                "metadata": self.metadata}

    @classmethod
    def from_json(cls, data) -> "GroupPres":
        if isinstance(data, str):
            data = json.loads(data)
        rels = tuple(tuple((g, int(e)) for g, e in r) for r in data["relators"])
        return cls(tuple(data["generators"]), rels, data.get("kind", "gamma_T"),
                   data.get("metadata", {}))


def make_pres(generators, relators, kind, metadata=None) -> GroupPres:
    """Build a presentation, dropping relators equal up to rotation/inversion."""
    generators = tuple(generators)
    order = {g: i for i, g in enumerate(generators)}
    seen, kept = set(), []
    for r in relators:
        r = syllables(letters(r))
        key = canonical_relator(r, order)
        if key in seen:
            continue
        seen.add(key)
        kept.append(r)
    return GroupPres(generators, tuple(kept), kind, dict(metadata or {}))


def a(i) -> str:
    return f"a{i}"


def b(i, j) -> str:
    return f"b{i}_{j}"


def _a_gens(v):
    return [a(i) for i in range(v)]


def triangle_relators(T: TrianglePres) -> list[Word]:
    return [((a(x), 1), (a(y), 1), (a(z), 1)) for x, y, z in T.classes]


def gamma_T(T: TrianglePres) -> GroupPres:
    """<a_i : a_i a_j a_k = 1 for each cyclic class (i, j, k)>."""
    return make_pres(_a_gens(T.v), triangle_relators(T), "gamma_T",
                     {"q": T.q, "v": T.v})


def _check_invariant(T: TrianglePres, pm, name, err):
    if image(T.classes, pm) != T.classes:
        raise err(f"{name} does not preserve the triangle presentation")


def _p_relators(v):
    return [(("p", 1), (a(i), 1), ("p", -1), (a((i + 1) % v), -1)) for i in range(v)]


def extend_by_p(T: TrianglePres) -> GroupPres:
    v = T.v
    _check_invariant(T, [(x + 1) % v for x in range(v)], "p: i -> i+1",
                     NotPInvariantError)
    rels = triangle_relators(T) + [(("p", v),)] + _p_relators(v)
    return make_pres(_a_gens(v) + ["p"], rels, "gamma_T_p",
                     {"q": T.q, "v": v, "order_p": v})


def extend_by_ps(T: TrianglePres) -> GroupPres:
    v, q = T.v, T.q
    _check_invariant(T, [(x + 1) % v for x in range(v)], "p: i -> i+1",
                     NotPInvariantError)
    _check_invariant(T, [q * x % v for x in range(v)], "s: i -> qi",
                     NotSInvariantError)
    rels = triangle_relators(T)
    rels += [(("s", 3),), (("p", v),), (("s", 1), ("p", 1), ("s", -1), ("p", -q))]
    rels += _p_relators(v)
    rels += [(("s", 1), (a(i), 1), ("s", -1), (a(q * i % v), -1)) for i in range(v)]
    return make_pres(_a_gens(v) + ["p", "s"], rels, "gamma_T_tilde",
                     {"q": q, "v": v, "order_ps": 3 * v})


def singer_lattice(D: DiffSet) -> GroupPres:
    """<sigma0, sigma1, sigma2 : sigma0^e sigma1^e sigma2^e, sigma_j^v>.

    An exponent 0 in D is written as v so the relator stays a nonempty word.
    """
    v = D.v
    gens = ["sigma0", "sigma1", "sigma2"]
    rels = []
    for e in D.elems:
        e = e or v
        rels.append(tuple((g, e) for g in gens))
    rels += [((g, v),) for g in gens]
    return GroupPres(tuple(gens), tuple(rels), "singer",
                     {"q": D.q, "v": v, "exponents": list(D.elems)})


def chamber_triple(triple) -> dict[str, Word]:
    """sigma0 -> p, sigma1 -> a_i p a_i^-1, sigma2 -> a_k^-1 p a_k."""
    i, _, k = triple
    return {"sigma0": (("p", 1),),
            "sigma1": ((a(i), 1), ("p", 1), (a(i), -1)),
            "sigma2": ((a(k), -1), ("p", 1), (a(k), 1))}


# -- rhombus subgroup ---------------------------------------------------------

@dataclass(frozen=True)
class HexRelation:
    """Six triples chained around a vertex, giving b b' b'' = 1.

    Pattern: (i1,i2,i3), (j3,j2,i3), (j3,k2,k3), (l3,l2,k3), (l3,m2,m3),
    (i1,n2,m3).
    """

    triples: tuple[tuple[int, int, int], ...]

    @property
    def relator(self) -> Word:
        t = self.triples
        return ((b(t[0][1], t[1][1]), 1), (b(t[2][1], t[3][1]), 1),
                (b(t[4][1], t[5][1]), 1))

    @property
    def degenerate(self) -> bool:
        """True when the three outer points are collinear (one shared line)."""
        t = self.triples
        return t[0][2] == t[2][2] == t[4][2]

    def members_ok(self, full) -> bool:
        t = self.triples
        chain = (t[1][0] == t[2][0] and t[3][0] == t[4][0] and t[5][0] == t[0][0]
                 and t[0][2] == t[1][2] and t[2][2] == t[3][2] and t[4][2] == t[5][2])
        return chain and all(x in full for x in t)

    def telescope(self) -> list[tuple[str, int]]:
        """Expand the relator in the a_i and substitute the six triangles.

        Each middle letter is rewritten from its own triangle:
        a_y = a_x^-1 a_z^-1 for (x, y, z) in T.  Returns the freely reduced
        result, which must be empty.
        """
        out = []
        for idx, (x, y, z) in enumerate(self.triples):
            sub = [(a(x), -1), (a(z), -1)]
            if idx % 2:  # the b generator ends with a_y^-1
                sub = [(g, -e) for g, e in reversed(sub)]
            out.extend(sub)
        return free_reduce(out)


def _middle_table(T: TrianglePres) -> dict[tuple[int, int], int]:
    return {(x, z): y for x, y, z in T.full()}


def hexagons(T: TrianglePres, include_degenerate: bool = True) -> list[HexRelation]:
    """Every six-triple hexagon pattern in T with well-defined b generators."""
    mid = _middle_table(T)
    outs = {}  # in-vertex z -> out-vertices x
    ins = {}   # out-vertex x -> in-vertices z
    for (x, z) in mid:
        outs.setdefault(z, []).append(x)
        ins.setdefault(x, []).append(z)
    for d in (outs, ins):
        for key in d:
            d[key].sort()
    found = []
    for i1 in sorted(ins):
        for i3 in ins[i1]:
            for j3 in outs[i3]:
                if j3 == i1:
                    continue
                for k3 in ins[j3]:
                    for l3 in outs[k3]:
                        if l3 == j3 or l3 == i1:
                            continue
                        for m3 in ins[l3]:
                            if (i1, m3) not in mid:
                                continue
                            h = HexRelation((
                                (i1, mid[i1, i3], i3), (j3, mid[j3, i3], i3),
                                (j3, mid[j3, k3], k3), (l3, mid[l3, k3], k3),
                                (l3, mid[l3, m3], m3), (i1, mid[i1, m3], m3)))
                            if include_degenerate or not h.degenerate:
                                found.append(h)
    return found


def rhombus_presentation(T: TrianglePres, include_degenerate: bool = True) -> GroupPres:
    """Generators b_{i,j} (i != j), relators b_{i,j} b_{j,i} and hexagons."""
    v = T.v
    gens = [b(i, j) for i in range(v) for j in range(v) if i != j]
    rels = [((b(i, j), 1), (b(j, i), 1)) for i in range(v) for j in range(i + 1, v)]
    hexes = hexagons(T, include_degenerate)
    full = T.full()
    for h in hexes:
        assert h.members_ok(full) and not h.telescope(), h
    rels += [h.relator for h in hexes]
    pres = make_pres(gens, rels, "rhombus", {"q": T.q, "v": v})
    pres.metadata["hexagon_tuples"] = len(hexes)
    pres.metadata["hexagon_relators"] = len(pres.relators) - v * (v - 1) // 2
    return pres


# -- homomorphisms ------------------------------------------------------------

_A = re.compile(r"a\d+$")
_B = re.compile(r"b\d+_\d+$")
_SIGMA = re.compile(r"sigma[012]$")

# value of each generator kind under each map (None = not in the domain)
_HOM = {
    "Phi": {"a": 0, "b": 0, "p": 1},
    "Psi": {"a": 1, "b": 0, "p": 0},
    "phi": {"sigma": 1},
    "psi": {"a": 1, "b": 0},
}


def _gen_kind(g: str) -> str:
    if _A.match(g):
        return "a"
    if _B.match(g):
        return "b"
    if _SIGMA.match(g):
        return "sigma"
    return g


def hom_modulus(which: str, v: int) -> int:
    return v if which in ("Phi", "phi") else 3


def hom_values(word, which: str, v: int) -> int:
    """Image of ``word`` under Phi, Psi (on Gamma_T x| <p>), phi or psi."""
    if which not in _HOM:
        raise ValueError(f"unknown homomorphism {which!r}")
    table = _HOM[which]
    total = 0
    for g, e in word:
        kind = _gen_kind(g)
        if kind not in table:
            raise UnknownGeneratorError(f"{g} is outside the domain of {which}")
        total += table[kind] * e
    return total % hom_modulus(which, v)


def kernel_member(word, which: str, v: int) -> bool:
    return hom_values(word, which, v) == 0


def rhombus_factorization(word) -> list[tuple[int, int]] | None:
    """Write an alternating word a_x a_y^-1 a_z a_w^-1 ... as b generators.

    Returns None for words not of that shape (they may still lie in the
    kernel; deciding that needs the relations).
    """
    lets = free_reduce(letters(word))
    if len(lets) % 2 or any(not _A.match(g) for g, _ in lets):
        return None
    out = []
    for k in range(0, len(lets), 2):
        (g1, e1), (g2, e2) = lets[k], lets[k + 1]
        if e1 != 1 or e2 != -1:
            return None
        out.append((int(g1[1:]), int(g2[1:])))
    return out


def expand_rhombus(word) -> list[tuple[str, int]]:
    """Rewrite b generators as a_i a_j^-1 and freely reduce."""
    out = []
    for g, e in letters(word):
        if _B.match(g):
            i, j = g[1:].split("_")
            piece = [(a(i), 1), (a(j), -1)]
            out.extend(piece if e > 0 else [(x, -y) for x, y in reversed(piece)])
        else:
            out.append((g, e))
    return free_reduce(out)


def abelianization(pres: GroupPres) -> list[int]:
    """Invariant factors of the relation matrix (0 marks a free Z factor)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    order = pres.order_map
    rows = []
    for r in pres.relators:
        row = [0] * len(order)
        for g, e in r:
            row[order[g]] += e
        rows.append(row)
    n = len(order)
    if not rows:
        return [0] * n
    inv = [int(x) for x in invariant_factors(Matrix(rows), domain=ZZ)]
    inv = [abs(x) for x in inv]
    return [x for x in inv if x != 1] + [0] * (n - len(inv))


# -- export -------------------------------------------------------------------

def export(pres: GroupPres, fmt: str = "gap") -> str:
    if fmt == "json":
        return json.dumps(pres.to_json(), sort_keys=True, indent=1) + "\n"
    if fmt == "gap":
        gens = ", ".join(f'"{g}"' for g in pres.generators)
        rels = ", ".join(word_str(r) for r in pres.relators)
        return (f"F := FreeGroup({gens});; AssignGeneratorVariables(F);;\n"
                f"G := F / [ {rels} ];;\n")
    if fmt == "magma":
        gens = ",".join(pres.generators)
        rels = ", ".join(word_str(r) for r in pres.relators)
        return (f"F<{gens}> := FreeGroup({len(pres.generators)});\n"
                f"G := quo<F | {rels}>;\n")
    raise UnsupportedFormatError(fmt)


def parse_gap(text: str) -> GroupPres:
    """Read back the GAP text written by ``export``."""
    m = re.search(r"FreeGroup\((.*?)\);;", text, re.S)
    gens = tuple(re.findall(r'"([^"]+)"', m.group(1)))
    body = re.search(r"F / \[(.*)\];;", text, re.S).group(1).strip()
    rels = []
    for chunk in filter(None, (c.strip() for c in body.split(","))):
        word = []
        for tok in chunk.split("*"):
            g, _, e = tok.partition("^")
            word.append((g, int(e) if e else 1))
        rels.append(tuple(word))
    return GroupPres(gens, tuple(rels))
