"""Combinatorial operations on monomial ideals.

These never touch a Groebner basis and serve as an independent oracle for
the Groebner-based routines in :mod:`corelab.ideal`.
"""

from __future__ import annotations

from itertools import product as cartesian

from .ideal import Ideal
from .poly import Monomial, PolyRing


class NotMonomialError(ValueError):
    pass


def exponents(I: Ideal) -> list[Monomial]:
    out = []
    for g in I.generators:
        if not g.is_monomial():
            raise NotMonomialError(f"{g} is not a monomial")
        out.append(g.ring.unpack(next(iter(g.coeffs))))
    return out


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(mons) -> list[Monomial]:
    mons = sorted(set(mons), key=lambda m: (sum(m), m))
    out: list[Monomial] = []
    for m in mons:
        if not any(divides(k, m) for k in out):
            out.append(m)
    return out


def _ideal(ring: PolyRing, mons) -> Ideal:
    return Ideal(ring, [ring.monomial(m) for m in minimalize(mons)])


def oracle_member(mon: Monomial, gens: list[Monomial]) -> bool:
    return any(divides(g, mon) for g in gens)


def monomial_intersect(I: Ideal, J: Ideal) -> Ideal:
    """Pairwise lcms of the generators."""
    a, b = exponents(I), exponents(J)
    return _ideal(I.ring, [tuple(map(max, x, y)) for x in a for y in b])


def _colon_monomial(gens: list[Monomial], m: Monomial) -> list[Monomial]:
    return minimalize(tuple(max(x - y, 0) for x, y in zip(g, m)) for g in gens)


def monomial_colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection over generators m of J of (g / gcd(g, m))."""
    a = exponents(I)
    result = None
    for m in exponents(J):
        part = _colon_monomial(a, m)
        if result is None:
            result = part
        else:
            result = minimalize(tuple(map(max, x, y)) for x in result for y in part)
    return _ideal(I.ring, result if result is not None else [])


def monomial_power(I: Ideal, n: int) -> Ideal:
    ring = I.ring
    if n == 0:
        return Ideal.unit(ring)
    a = minimalize(exponents(I))
    current = a
    for _ in range(n - 1):
        current = minimalize(tuple(map(sum, zip(x, y))) for x in current for y in a)
    return _ideal(ring, current)


def monomial_oracle(op: str, *ideals: Ideal, n: int | None = None, monomial=None):
    """Dispatch ``colon``/``intersect``/``power``/``membership`` to the combinatorial rules."""
    if op == "colon":
        return monomial_colon(*ideals)
    if op == "intersect":
        return monomial_intersect(*ideals)
    if op == "power":
        if n is None:
            raise ValueError("power needs n")
        return monomial_power(ideals[0], n)
    if op == "membership":
        return oracle_member(tuple(monomial), exponents(ideals[0]))
    raise ValueError(f"unknown oracle operation {op!r}")


def standard_monomials(I: Ideal) -> list[Monomial]:
    """Monomials outside an m-primary monomial ideal (its colength basis)."""
    gens = exponents(I)
    n = I.ring.nvars
    bounds = []
    for i in range(n):
        pure = [g[i] for g in gens if all(g[j] == 0 for j in range(n) if j != i)]
        if not pure:
            raise ValueError("monomial ideal is not m-primary")
        bounds.append(min(pure))
    return [m for m in cartesian(*(range(b) for b in bounds)) if not oracle_member(m, gens)]
