"""Perfect difference sets in Z/vZ with v = q^2 + q + 1."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from . import gf
from .errors import NotAMultiplierError, NotAPdsError, NotRelatedError


def order_v(q: int) -> int:
    return q * q + q + 1


def units(v: int) -> list[int]:
    return [u for u in range(1, v) if gcd(u, v) == 1]


@dataclass(frozen=True)
class DiffSet:
    """A (q+1)-subset of Z/vZ, stored sorted ascending."""

    q: int
    elems: tuple[int, ...]

    def __post_init__(self):
        v = order_v(self.q)
        object.__setattr__(self, "elems", tuple(sorted({e % v for e in self.elems})))

    @property
    def v(self) -> int:
        return order_v(self.q)

    @property
    def k(self) -> int:
        return self.q + 1

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)

    def __contains__(self, x):
        return x % self.v in self.elems

    def shift(self, s: int) -> "DiffSet":
        return DiffSet(self.q, tuple(e + s for e in self.elems))

    def scale(self, u: int) -> "DiffSet":
        return DiffSet(self.q, tuple(u * e for e in self.elems))

    def to_json(self) -> dict:
        return {"q": self.q, "v": self.v, "elems": list(self.elems)}

    @classmethod
    def from_json(cls, data) -> "DiffSet":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["q"], tuple(data["elems"]))


@dataclass
class PdsCheck:
    ok: bool
    size_ok: bool
    duplicated: list[int] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_pds(cand, q: int) -> PdsCheck:
    """Check that ``cand`` is a (v, q+1, 1) difference set in Z/vZ."""
    v = order_v(q)
    elems = sorted({c % v for c in cand})
    size_ok = len(elems) == q + 1 and len(list(cand)) == q + 1
    counts = [0] * v
    for a in elems:
        for b in elems:
            if a != b:
                counts[(a - b) % v] += 1
    dup = [d for d in range(1, v) if counts[d] > 1]
    miss = [d for d in range(1, v) if counts[d] == 0]
    return PdsCheck(size_ok and not dup and not miss, size_ok, dup, miss)


def as_pds(cand, q: int) -> DiffSet:
    chk = verify_pds(cand, q)
    if not chk:
        raise NotAPdsError(f"{sorted(cand)} is not a perfect difference set of "
                           f"order {q} (duplicated={chk.duplicated}, "
                           f"missing={chk.missing})")
    return DiffSet(q, tuple(cand))


def singer_trace_pds(ctx: gf.FieldCtx) -> DiffSet:
    """Singer's set {d : Tr(zeta^d) = 0}, exponents in [0, v)."""
    elems = gf.trace_zero_exponents(ctx)
    assert len(elems) == ctx.q + 1, elems
    return as_pds(elems, ctx.q)


def halberstam_laxton_pds(ctx: gf.FieldCtx) -> DiffSet:
    """Exponents mod v of the nonzero elements a + b*zeta, a, b in GF(q)."""
    logs = gf.discrete_log_table(ctx)
    base = gf.base_field_elements(ctx)
    found = set()
    for a in base:
        for b in base:
            x = gf.add(ctx, a, gf.mul(ctx, b, ctx.zeta))
            if x != ctx.zero:
                found.add(logs[x] % ctx.v)
    return as_pds(found, ctx.q)


def multiplier_shift(D: DiffSet, m: int) -> int | None:
    """The shift s with m*D = D + s, or None if m is not a multiplier."""
    mD = set(D.scale(m).elems)
    d0 = D.elems[0]
    for x in sorted(mD):
        s = (x - d0) % D.v
        if all((d + s) % D.v in mD for d in D.elems):
            return s
    return None


@dataclass(frozen=True)
class MultiplierReport:
    base: DiffSet
    multipliers: dict[int, int]

    @property
    def fixed_by(self) -> set[int]:
        return {m for m, s in self.multipliers.items() if s == 0}

    def to_json(self) -> dict:
        return {"base": self.base.to_json(),
                "multipliers": [[m, s] for m, s in sorted(self.multipliers.items())],
                "fixed_by": sorted(self.fixed_by)}


def multiplier_report(D: DiffSet) -> MultiplierReport:
    """Scan every unit m != 1 of Z/vZ for m*D = D + s."""
    found = {}
    for m in units(D.v):
        if m == 1:
            continue
        s = multiplier_shift(D, m)
        if s is not None:
            found[m] = s
    p, _ = gf.prime_power(D.q)
    # p, hence every power of p, is always a multiplier
    assert p % D.v in found and D.q % D.v in found, found
    return MultiplierReport(D, found)


def fixed_shifts(D: DiffSet, m: int) -> list[int]:
    """All s with m(D + s) = D + s."""
    if multiplier_shift(D, m) is None:
        raise NotAMultiplierError(f"{m} is not a multiplier of {list(D.elems)}")
    out = []
    for s in range(D.v):
        Ds = D.shift(s)
        if Ds.scale(m) == Ds:
            out.append(s)
    return out


@dataclass(frozen=True)
class FixedByAllClass:
    q: int
    p: int
    count: int
    branch: str


def classify_fixed_by_all(q: int) -> FixedByAllClass:
    """How many shifts of a PDS of order q are fixed by every multiplier."""
    p, _ = gf.prime_power(q)
    if q % 3 in (0, 2):
        return FixedByAllClass(q, p, 1, f"q = {q % 3} mod 3")
    if p % 3 == 2:
        return FixedByAllClass(q, p, 1, "q = 1, p = 2 mod 3")
    return FixedByAllClass(q, p, 3, "q = 1, p = 1 mod 3")


def shifts_fixed_by_all(D: DiffSet) -> list[int]:
    """Brute force: shifts of D fixed by every multiplier of D."""
    rep = multiplier_report(D)
    common = None
    for m in rep.multipliers:
        fs = set(fixed_shifts(D, m))
        common = fs if common is None else common & fs
    return sorted(common)


def q_orbits(q: int) -> list[tuple[int, ...]]:
    """Orbits of x -> q*x on Z/vZ, each listed as (d, qd, q^2 d) or (d,)."""
    v = order_v(q)
    seen = set()
    out = []
    for d in range(v):
        if d in seen:
            continue
        orb = [d]
        x = q * d % v
        while x != d:
            orb.append(x)
            x = q * x % v
        seen.update(orb)
        out.append(tuple(orb))
    return out


def enumerate_pds_fixed_by_q(q: int) -> list[DiffSet]:
    """Every PDS D of order q with qD = D, in ascending sorted order.

    Such D is a union of q-orbits, so the search picks orbits whose sizes sum
    to q+1, pruning as soon as a difference repeats.
    """
    v = order_v(q)
    k = q + 1
    orbits = q_orbits(q)
    results = []
    used = [False] * v
    chosen: list[int] = []

    def add_orbit(orb):
        # marks new differences; returns (ok, marked) so the caller can undo
        marked = []
        members = list(chosen)
        for x in orb:
            for y in members:
                for d in ((x - y) % v, (y - x) % v):
                    if used[d]:
                        return False, marked
                    used[d] = True
                    marked.append(d)
            members.append(x)
        return True, marked

    def undo(marked):
        for d in marked:
            used[d] = False

    def search(start, size):
        if size == k:
            results.append(DiffSet(q, tuple(chosen)))
            return
        for i in range(start, len(orbits)):
            orb = orbits[i]
            if size + len(orb) > k:
                continue
            ok, marked = add_orbit(orb)
            if ok:
                chosen.extend(orb)
                search(i + 1, size + len(orb))
                del chosen[len(chosen) - len(orb):]
            undo(marked)

    search(0, 0)
    results.sort(key=lambda D: D.elems)
    return results


def find_transformation(D1: DiffSet, D2: DiffSet) -> tuple[int, int]:
    """Lexicographically least (u, s) with D2 = u*D1 + s."""
    if D1.q != D2.q:
        raise NotRelatedError("difference sets have different orders")
    target = set(D2.elems)
    v = D1.v
    for u in units(v):
        uD = D1.scale(u)
        shifts = [s for s in sorted({(t - uD.elems[0]) % v for t in target})
                  if uD.shift(s).elems == D2.elems]
        if shifts:
            return u, shifts[0]
    raise NotRelatedError(f"{list(D1.elems)} and {list(D2.elems)} are not related "
                          "by a unit and a shift")
