"""Exact arithmetic in GF(q^3) for q = p^n.

The cubic extension is realised directly as GF(p)[x]/(f) with ``f`` a monic
irreducible polynomial of degree 3n.  Elements are tuples of 3n coefficients
in {0, ..., p-1}, lowest degree first.  The subfield GF(q) is the fixed field
of x -> x^q, and the relative trace is x + x^q + x^(q^2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import (NoPrimitiveError, NonPrimeError, NotPrimePowerError,
                     ReducibleModulusError)

Elem = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q = p^n, or raise NotPrimePowerError."""
    if q < 2:
        raise NotPrimePowerError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")
    p, n = ps[0], 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# -- polynomials over GF(p), coefficient lists lowest degree first -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _poly_mod(a, f, p):
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: list[int] | tuple[int, ...], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over GF(p)."""
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p ** d, f, p), x, p):
        return False
    for r in prime_factors(d):
        h = _poly_sub(_poly_powmod(x, p ** (d // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) - 1 != 0:
            return False
    return True


def _monic_polys(p: int, d: int):
    """Monic degree-d polynomials in ascending coefficient order.

    The lower coefficients are read as base-p digits of a counter, the
    constant term least significant.
    """
    for idx in range(p ** d):
        coeffs = []
        for _ in range(d):
            coeffs.append(idx % p)
            idx //= p
        yield tuple(coeffs) + (1,)


# -- the field context --------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    """GF(q^3) with q = p^n, a modulus of degree 3n and a primitive element."""

    p: int
    n: int
    modulus: tuple[int, ...]
    zeta: Elem

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def degree(self) -> int:
        return 3 * self.n

    @property
    def order(self) -> int:
        """Order of the multiplicative group GF(q^3)^x."""
        return self.q ** 3 - 1

    @property
    def v(self) -> int:
        return self.q * self.q + self.q + 1

    @property
    def zero(self) -> Elem:
        return (0,) * self.degree

    @property
    def one(self) -> Elem:
        return (1,) + (0,) * (self.degree - 1)

    def elem(self, coeffs) -> Elem:
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.degree:
            c = _poly_mod(c, list(self.modulus), self.p)
        return tuple(c) + (0,) * (self.degree - len(c))

    @cached_property
    def zeta_powers(self) -> tuple[Elem, ...]:
        """zeta^0, zeta^1, ..., zeta^(q^3 - 2)."""
        out = [self.one]
        for _ in range(self.order - 1):
            out.append(mul(self, out[-1], self.zeta))
        return tuple(out)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus),
                "zeta": list(self.zeta)}

    @classmethod
    def from_json(cls, data: dict | str) -> "FieldCtx":
        if isinstance(data, str):
            data = json.loads(data)
        return make_field(data["p"], data["n"], data["modulus"],
                          zeta=data.get("zeta"))


def add(ctx: FieldCtx, x: Elem, y: Elem) -> Elem:
    p = ctx.p
    return tuple((a + b) % p for a, b in zip(x, y))


def neg(ctx: FieldCtx, x: Elem) -> Elem:
    return tuple(-a % ctx.p for a in x)


def scale(ctx: FieldCtx, c: int, x: Elem) -> Elem:
    return tuple(c * a % ctx.p for a in x)


def mul(ctx: FieldCtx, x: Elem, y: Elem) -> Elem:
    return ctx.elem(_poly_mulmod(list(x), list(y), list(ctx.modulus), ctx.p))


def power(ctx: FieldCtx, x: Elem, e: int) -> Elem:
    if e < 0:
        e %= ctx.order
    return ctx.elem(_poly_powmod(list(x), e, list(ctx.modulus), ctx.p))


def frobenius(ctx: FieldCtx, x: Elem, times: int = 1) -> Elem:
    """x^(q^times)."""
    return power(ctx, x, ctx.q ** times)


def trace_rel(ctx: FieldCtx, x: Elem) -> Elem:
    """Relative trace GF(q^3) -> GF(q): x + x^q + x^(q^2)."""
    xq = frobenius(ctx, x)
    xq2 = frobenius(ctx, xq)
    return add(ctx, add(ctx, x, xq), xq2)


def in_base_field(ctx: FieldCtx, x: Elem) -> bool:
    return frobenius(ctx, x) == x


def is_primitive(ctx_or_p, x: Elem, modulus=None) -> bool:
    """True iff ``x`` generates GF(q^3)^x.

    Accepts either a FieldCtx or (p, x, modulus) for use during construction.
    """
    if isinstance(ctx_or_p, FieldCtx):
        p, modulus = ctx_or_p.p, list(ctx_or_p.modulus)
    else:
        p, modulus = ctx_or_p, list(modulus)
    order = p ** (len(modulus) - 1) - 1
    if not _trim(list(x)):
        return False
    if _poly_powmod(list(x), order, modulus, p) != [1]:
        return False
    return all(_poly_powmod(list(x), order // r, modulus, p) != [1]
               for r in prime_factors(order))


def make_field(p: int, n: int, modulus=None, zeta=None) -> FieldCtx:
    """Build GF((p^n)^3).

    Without ``modulus`` the first monic degree-3n polynomial (ascending
    coefficient order) that is irreducible with x primitive is used, so
    zeta = x.  With a supplied modulus, zeta is the first primitive element
    in the same ordering unless given explicitly.
    """
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    d = 3 * n
    x = (0, 1) + (0,) * (d - 2)
    if modulus is None:
        for f in _monic_polys(p, d):
            if f[0] and is_irreducible(f, p) and is_primitive(p, x, f):
                modulus = f
                break
        else:  # pragma: no cover - every finite field has a primitive poly
            raise NoPrimitiveError(f"no primitive polynomial for p={p}, n={n}")
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != d + 1 or modulus[-1] != 1:
        raise ReducibleModulusError(
            f"modulus must be monic of degree {d}, got {list(modulus)}")
    if not is_irreducible(modulus, p):
        raise ReducibleModulusError(f"{list(modulus)} is reducible over GF({p})")
    if zeta is None:
        for cand in product(range(p), repeat=d):
            cand = tuple(reversed(cand))
            if is_primitive(p, cand, modulus):
                zeta = cand
                break
        else:  # pragma: no cover
            raise NoPrimitiveError("no primitive element found")
    zeta = tuple(int(c) % p for c in zeta) + (0,) * (d - len(zeta))
    if not is_primitive(p, zeta, modulus):
        raise NoPrimitiveError(f"{list(zeta)} is not primitive")
    return FieldCtx(p, n, modulus, zeta)


def discrete_log_table(ctx: FieldCtx) -> dict[Elem, int]:
    """Map every nonzero element to its exponent base zeta."""
    table = {e: i for i, e in enumerate(ctx.zeta_powers)}
    assert len(table) == ctx.order
    return table


def trace_zero_exponents(ctx: FieldCtx) -> list[int]:
    """Exponents d in [0, v) with Tr(zeta^d) = 0."""
    zero = ctx.zero
    return [d for d in range(ctx.v) if trace_rel(ctx, ctx.zeta_powers[d]) == zero]


def base_field_elements(ctx: FieldCtx) -> list[Elem]:
    """GF(q) inside GF(q^3): zero and the powers zeta^(v*j)."""
    pw = ctx.zeta_powers
    return [ctx.zero] + [pw[ctx.v * j] for j in range(ctx.q - 1)]
