"""Ideals in polynomial rings and the Groebner-based operations on them."""

from __future__ import annotations

import threading
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .groebner import buchberger, normal_form
from .poly import GREVLEX, MonomialOrder, Polynomial, PolyRing

SATURATION_LIMIT = 64


class SaturationError(RuntimeError):
    pass


class Ideal:
    """A finitely generated ideal with a per-order cache of reduced Groebner bases.

    An empty generator list denotes the zero ideal.
    """

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial | str]):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring.variables != ring.variables or g.ring.field != ring.field:
                raise ValueError(f"generator {g} does not live in {ring}")
            if g.coeffs:
                gens.append(g if g.ring == ring else Polynomial(ring, g.coeffs))
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict[MonomialOrder, list[Polynomial]] = {}
        self._memo: dict = {}  # derived data (powers, analytic spread)
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolyRing) -> Ideal:
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: PolyRing) -> Ideal:
        """The homogeneous maximal ideal (x_1, ..., x_n)."""
        return cls(ring, ring.gens())

    def gb(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        order = order or GREVLEX
        basis = self._gb.get(order)
        if basis is None:
            basis = buchberger(self.generators, order)
            with self._lock:
                basis = self._gb.setdefault(order, basis)
        return basis

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.gb()
        return len(gb) == 1 and len(gb[0].coeffs) == 1 and 0 in gb[0].coeffs

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.gb(), GREVLEX)

    def __contains__(self, f: Polynomial) -> bool:
        return not self.reduce(f).coeffs

    def contains(self, other: Ideal) -> bool:
        return contains(self, other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash(tuple(frozenset(g.coeffs.items()) for g in self.gb()))

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return product(self, other)

    def __pow__(self, n: int) -> Ideal:
        return power(self, n)

    def canonical_strings(self) -> list[str]:
        """Sorted text of the reduced grevlex basis (the canonical rendering)."""
        return sorted(str(g) for g in self.gb(GREVLEX))

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gb()) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _same_ring(*ideals: Ideal) -> PolyRing:
    ring = ideals[0].ring
    for I in ideals[1:]:
        if I.ring.variables != ring.variables or I.ring.field != ring.field:
            raise ValueError("ideals live in different rings")
    return ring


def contains(I: Ideal, J: Ideal) -> bool:
    """True iff J is a subset of I."""
    _same_ring(I, J)
    if not J.generators:
        return True
    gb = I.gb()
    return all(not normal_form(g, gb, GREVLEX).coeffs for g in J.generators)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return [g.coeffs for g in I.gb()] == [g.coeffs for g in J.gb()]


def ideal_sum(*ideals: Ideal) -> Ideal:
    ring = _same_ring(*ideals)
    return Ideal(ring, [g for I in ideals for g in I.generators])


def _interreduce_generators(ring: PolyRing, gens: Sequence[Polynomial]) -> list[Polynomial]:
    """Drop duplicate (up to scalars) generators; minimalize when all are monomials."""
    seen, out = set(), []
    for g in gens:
        if not g.coeffs:
            continue
        m = g.monic(GREVLEX)
        k = frozenset(m.coeffs.items())
        if k not in seen:
            seen.add(k)
            out.append(m)
    if out and all(g.is_monomial() for g in out):
        mons = sorted({next(iter(g.coeffs)) for g in out}, key=ring.mdeg)
        minimal: list[int] = []
        for e in mons:
            if not any(ring.divides(m, e) for m in minimal):
                minimal.append(e)
        out = [Polynomial(ring, {e: 1}) for e in minimal]
    return out


def product(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, _interreduce_generators(
        ring, [f * g for f in I.generators for g in J.generators]))


def power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative ideal power")
    ring = I.ring
    if n == 0:
        return Ideal.unit(ring)
    cached = I._memo.get(("power", n))
    if cached is None:
        cached = I._memo[("power", n)] = _power(I, n)
    return cached


def _power(I: Ideal, n: int) -> Ideal:
    ring = I.ring
    gens = _interreduce_generators(ring, I.generators)
    if all(g.is_monomial() for g in gens):
        result = gens
        for _ in range(n - 1):
            result = _interreduce_generators(ring, [f * g for f in result for g in gens])
        return Ideal(ring, result)
    # n-fold products, sharing partial products between multisets
    cache: dict[tuple[int, ...], Polynomial] = {(): ring.one()}
    for combo in combinations_with_replacement(range(len(gens)), n):
        for k in range(1, n + 1):
            if combo[:k] not in cache:
                cache[combo[:k]] = cache[combo[:k - 1]] * gens[combo[k - 1]]
    products = [cache[c] for c in combinations_with_replacement(range(len(gens)), n)]
    return Ideal(ring, _interreduce_generators(ring, products))


def _extended_ring(ring: PolyRing, new: str, position: str = "first") -> tuple[PolyRing, str]:
    name = new
    while name in ring.variables:
        name += "_"
    variables = (name,) + ring.variables if position == "first" else ring.variables + (name,)
    return PolyRing(variables, ring.field), name


def eliminate(I: Ideal, block: Iterable[str | int]) -> Ideal:
    """I intersected with the subring free of the ``block`` variables (result in I's ring)."""
    ring = I.ring
    idx = [ring.var_index(v) if isinstance(v, str) else v for v in block]
    if not idx:
        return I
    if not I.generators:
        return I
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    elim_ring = PolyRing([ring.variables[i] for i in perm], ring.field,
                         MonomialOrder.elimination(len(idx)))
    positions = [perm.index(i) for i in range(ring.nvars)]
    gens = [g.to_ring(elim_ring, positions) for g in I.generators]
    gb = buchberger(gens, elim_ring.order)
    block_set = set(range(len(idx)))
    keep = [g for g in gb if not (g.support_variables() & block_set)]
    return Ideal(ring, [g.to_ring(ring, [perm[i] for i in range(ring.nvars)]) for g in keep])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J as (t*I + (1-t)*J) ∩ k[x]."""
    ring = _same_ring(I, J)
    if not I.generators or not J.generators:
        return Ideal(ring, [])
    big, t = _extended_ring(ring, "t", "first")
    tpoly = big.gen(0)
    one_minus_t = big.one() - tpoly
    gens = [tpoly * f.to_ring(big) for f in I.generators]
    gens += [one_minus_t * g.to_ring(big) for g in J.generators]
    gb = buchberger(gens, MonomialOrder.elimination(1))
    keep = [g for g in gb if 0 not in g.support_variables()]
    return Ideal(ring, [_drop_first(g, ring) for g in keep])


def _drop_first(g: Polynomial, ring: PolyRing) -> Polynomial:
    out = {}
    for e, c in g.coeffs.items():
        out[ring.pack(g.ring.unpack(e)[1:])] = c
    return Polynomial(ring, out)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f / g, raising if g does not divide f."""
    ring = f.ring
    F = ring.field
    key = GREVLEX.key_function(ring.nvars)
    lg = max(g.coeffs, key=key)
    inv = F.inv(g.coeffs[lg])
    rem = dict(f.coeffs)
    quotient: dict[int, int] = {}
    while rem:
        lf = max(rem, key=key)
        if not ring.divides(lg, lf):
            raise ArithmeticError(f"{g} does not divide {f}")
        q = lf - lg
        c = F.mul(rem[lf], inv)
        quotient[q] = c
        for e, a in g.coeffs.items():
            m = e + q
            v = F.sub(rem.get(m, 0), F.mul(c, a))
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return Polynomial(ring, quotient)


def colon_element(I: Ideal, g: Polynomial) -> Ideal:
    """I : (g) = (I ∩ (g)) / g."""
    ring = I.ring
    if not g.coeffs:
        return Ideal.unit(ring)
    inter = intersect(I, Ideal(ring, [g]))
    return Ideal(ring, [exact_divide(h, g) for h in inter.gb()])


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J = ∩ over generators g of J of (I : g)."""
    ring = _same_ring(I, J)
    if not J.generators:
        raise ValueError("colon by the zero ideal")
    result = None
    for g in J.generators:
        part = colon_element(I, g)
        if part.is_unit():
            continue  # (1) is neutral for intersection
        result = part if result is None else intersect(result, part)
    return result if result is not None else Ideal.unit(ring)


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^∞, the stable value of I : J ⊆ I : J^2 ⊆ ..."""
    _same_ring(I, J)
    current = colon(I, J)
    for _ in range(SATURATION_LIMIT):
        nxt = colon(current, J)
        if ideal_equal(nxt, current):
            return current
        current = nxt
    raise SaturationError(f"saturation did not stabilize after {SATURATION_LIMIT} steps")


def leading_monomials(I: Ideal, order: MonomialOrder | None = None) -> list[tuple[int, ...]]:
    order = order or GREVLEX
    return [g.leading_term(order)[0] for g in I.gb(order)]


def dimension(I: Ideal) -> int:
    """Krull dimension of ring/I via maximal independent sets of the initial ideal.

    Returns -1 for the unit ideal.
    """
    ring = I.ring
    if not I.generators:
        return ring.nvars
    if I.is_unit():
        return -1
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in leading_monomials(I)]
    for size in range(ring.nvars, -1, -1):
        for subset in combinations(range(ring.nvars), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def height(I: Ideal) -> int:
    if I.generators and I.is_unit():
        raise ValueError("height of the unit ideal is undefined")
    return I.ring.nvars - dimension(I)


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """f ∈ √I, via 1 ∈ (I, 1 - t*f) in a ring with one extra variable."""
    ring = I.ring
    if not f.coeffs:
        return True
    big, _ = _extended_ring(ring, "t", "last")
    t = big.gen(big.nvars - 1)
    gens = [g.to_ring(big) for g in I.generators] + [big.one() - t * f.to_ring(big)]
    return Ideal(big, gens).is_unit()


def subring_ideal(I: Ideal, variables: Sequence[str]) -> Ideal:
    """Re-home an ideal whose generators only involve ``variables`` into k[variables]."""
    sub = PolyRing(variables, I.ring.field)
    positions = {I.ring.var_index(v): k for k, v in enumerate(variables)}
    gens = []
    for g in I.generators:
        out = {}
        for e, c in g.coeffs.items():
            exps = [0] * len(variables)
            for i, a in enumerate(I.ring.unpack(e)):
                if a:
                    if i not in positions:
                        raise ValueError(f"{g} involves variables outside {variables}")
                    exps[positions[i]] = a
            out[sub.pack(exps)] = c
        gens.append(Polynomial(sub, out))
    return Ideal(sub, gens)
