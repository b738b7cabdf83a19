"""Buchberger's algorithm and multivariate division.

Pair selection follows the normal strategy (smallest lcm first) and pairs are
pruned with the Gebauer-Moeller installation of Buchberger's two criteria.
All routines work on the packed-monomial dicts of :class:`Polynomial`.
"""

from __future__ import annotations

import heapq
from typing import Sequence

from .field import FieldDescriptor, FieldElement
from .poly import Monomial, MonomialOrder, Polynomial, PolyRing


def leading_term(f: Polynomial, order: MonomialOrder) -> tuple[Monomial, FieldElement]:
    return f.leading_term(order)


class _Basis:
    """Monic basis elements prepared for division: (lm, tail terms)."""

    def __init__(self, ring: PolyRing, key):
        self.ring = ring
        self.key = key
        self.lms: list[int] = []
        self.tails: list[list[tuple[int, int]]] = []

    def add(self, coeffs: dict[int, int]) -> int:
        """Append a monic polynomial; returns its index."""
        lm = max(coeffs, key=self.key)
        self.lms.append(lm)
        self.tails.append([(e, c) for e, c in coeffs.items() if e != lm])
        return len(self.lms) - 1


def _make_monic(F: FieldDescriptor, coeffs: dict[int, int], key) -> dict[int, int]:
    lm = max(coeffs, key=key)
    lc = coeffs[lm]
    if lc == 1:
        return coeffs
    inv = F.inv(lc)
    mul = F.mul
    return {e: mul(c, inv) for e, c in coeffs.items()}


def _reduce(F: FieldDescriptor, ring: PolyRing, key, p: dict[int, int],
            basis: _Basis, active: Sequence[int], full: bool = True) -> dict[int, int]:
    """Remainder of ``p`` on division by the basis elements listed in ``active``.

    ``p`` is consumed.  With ``full=False`` only the leading term is reduced until
    it is irreducible; the tail is left untouched.
    """
    if not p:
        return p
    guard = ring._guard
    lms, tails = basis.lms, basis.tails
    divisors = [(lms[i], tails[i]) for i in active]
    heap = [(-key(e), e) for e in p]
    heapq.heapify(heap)
    rem: dict[int, int] = {}
    prime = F.kind == "prime"
    if prime:
        P = F.p
    else:
        mul = F.mul
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        _, e = pop(heap)
        c = p.pop(e, 0)
        if not c:
            continue
        for lm, tail in divisors:
            if e >= lm and not ((e - lm) & guard):
                q = e - lm
                if prime:
                    for m, t in tail:
                        m += q
                        old = p.get(m)
                        if old is None:
                            p[m] = (-c * t) % P
                            push(heap, (-key(m), m))
                        else:
                            v = (old - c * t) % P
                            if v:
                                p[m] = v
                            else:
                                del p[m]
                else:
                    for m, t in tail:
                        m += q
                        old = p.get(m)
                        if old is None:
                            p[m] = mul(c, t)
                            push(heap, (-key(m), m))
                        else:
                            v = old ^ mul(c, t)
                            if v:
                                p[m] = v
                            else:
                                del p[m]
                break
        else:
            rem[e] = c
            if not full:
                rem.update(p)
                return rem
    return rem


def normal_form(f: Polynomial, basis: Sequence[Polynomial],
                order: MonomialOrder | None = None) -> Polynomial:
    """Fully reduced remainder of f on division by ``basis``."""
    ring = f.ring
    order = order or ring.order
    key = order.key_function(ring.nvars)
    prepared = _Basis(ring, key)
    for g in basis:
        if g.coeffs:
            prepared.add(_make_monic(ring.field, dict(g.coeffs), key))
    rem = _reduce(ring.field, ring, key, dict(f.coeffs), prepared, range(len(prepared.lms)))
    return Polynomial(ring, rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    ring = f.ring
    order = order or ring.order
    key = order.key_function(ring.nvars)
    F = ring.field
    lf = max(f.coeffs, key=key)
    lg = max(g.coeffs, key=key)
    lcm = ring.lcm(lf, lg)
    a = f.shift(lcm - lf).scale(F.inv(f.coeffs[lf]))
    b = g.shift(lcm - lg).scale(F.inv(g.coeffs[lg]))
    return a - b


class GroebnerStats:
    __slots__ = ("pairs", "reductions_to_zero", "basis_size")

    def __init__(self):
        self.pairs = 0
        self.reductions_to_zero = 0
        self.basis_size = 0


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               stats: GroebnerStats | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    The result is monic, inter-reduced and sorted by descending leading monomial,
    hence canonical for (ideal, order).  The zero ideal gives ``[]``.
    """
    gens = [g for g in gens if g.coeffs]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens[1:]:
        if g.ring.variables != ring.variables or g.ring.field != ring.field:
            raise ValueError("generators from different rings")
    order = order or ring.order
    F = ring.field
    key = order.key_function(ring.nvars)
    basis = _Basis(ring, key)
    lms = basis.lms
    lcm_of, coprime = ring.lcm, ring.gcd_is_one
    guard = ring._guard

    def divides(a: int, b: int) -> bool:
        return b >= a and not ((b - a) & guard)

    active: list[int] = []
    pairs: list[tuple[int, int, int]] = []  # (i, j, lcm)

    def update(h: int):
        nonlocal active, pairs
        lh = lms[h]
        cands = [(g, lcm_of(lh, lms[g])) for g in active]
        keep = []
        for idx, (g, l) in enumerate(cands):
            if coprime(lh, lms[g]):
                keep.append((g, l))
                continue
            redundant = False
            for g2, l2 in cands[idx + 1:]:
                if divides(l2, l):
                    redundant = True
                    break
            if not redundant:
                for g2, l2 in keep:
                    if divides(l2, l):
                        redundant = True
                        break
            if not redundant:
                keep.append((g, l))
        new_pairs = [(g, h, l) for g, l in keep if not coprime(lh, lms[g])]
        # drop duplicate lcms among new pairs (chain criterion within the batch)
        seen: dict[int, tuple[int, int, int]] = {}
        for pr in new_pairs:
            seen.setdefault(pr[2], pr)
        old = [(i, j, l) for i, j, l in pairs
               if not (divides(lh, l) and lcm_of(lms[i], lh) != l and lcm_of(lms[j], lh) != l)]
        pairs = old + list(seen.values())
        active = [g for g in active if not divides(lh, lms[g])] + [h]

    # start from an interreduced generating set, smallest leading monomial first
    start = sorted((_make_monic(F, dict(g.coeffs), key) for g in gens),
                   key=lambda c: key(max(c, key=key)))
    for coeffs in start:
        r = _reduce(F, ring, key, dict(coeffs), basis, active)
        if r:
            update(basis.add(_make_monic(F, r, key)))

    mdeg = ring.mdeg
    while pairs:
        best = min(range(len(pairs)), key=lambda t: (mdeg(pairs[t][2]), key(pairs[t][2])))
        i, j, l = pairs.pop(best)
        if stats is not None:
            stats.pairs += 1
        s = _spair(F, basis, i, j, l)
        r = _reduce(F, ring, key, s, basis, active)
        if r:
            update(basis.add(_make_monic(F, r, key)))
        elif stats is not None:
            stats.reductions_to_zero += 1

    # inter-reduce the minimal basis
    out = []
    for g in active:
        lm = lms[g]
        tail = dict(basis.tails[g])
        others = [h for h in active if h != g]
        tail = _reduce(F, ring, key, tail, basis, others)
        tail[lm] = 1
        out.append(tail)
    out.sort(key=lambda c: key(max(c, key=key)), reverse=True)
    if stats is not None:
        stats.basis_size = len(out)
    return [Polynomial(ring, c) for c in out]


def _spair(F: FieldDescriptor, basis: _Basis, i: int, j: int, l: int) -> dict[int, int]:
    qi = l - basis.lms[i]
    qj = l - basis.lms[j]
    out: dict[int, int] = {}
    sub = F.sub
    for e, c in basis.tails[i]:
        out[e + qi] = c
    for e, c in basis.tails[j]:
        m = e + qj
        v = sub(out.get(m, 0), c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    """Check Buchberger's criterion: every S-polynomial reduces to zero."""
    basis = [g for g in basis if g.coeffs]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if normal_form(s_polynomial(basis[a], basis[b], order), basis, order).coeffs:
                return False
    return True


def is_reduced(basis: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    if not basis:
        return True
    ring = basis[0].ring
    order = order or ring.order
    key = order.key_function(ring.nvars)
    lms = []
    for g in basis:
        lm = max(g.coeffs, key=key)
        if g.coeffs[lm] != 1:
            return False
        lms.append(lm)
    for idx, g in enumerate(basis):
        for e in g.coeffs:
            for jdx, lm in enumerate(lms):
                if jdx != idx and ring.divides(lm, e):
                    return False
    return True
