"""Rees algebras, special fiber rings and local invariants of their presentations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .ideal import (
    Ideal, dimension, eliminate, height, radical_membership, subring_ideal,
)
from .poly import Polynomial, PolyRing


class PresentationError(ValueError):
    pass


class SpecializationError(RuntimeError):
    pass


@dataclass
class Presentation:
    """A quotient ``ambient / defining``; ``generator_map`` sends each fiber
    variable T_i to the ideal generator it presents."""

    ambient: PolyRing
    defining: Ideal
    generator_map: dict[str, Polynomial] = field(default_factory=dict)

    @property
    def fiber_variables(self) -> list[str]:
        return list(self.generator_map)

    def dimension(self) -> int:
        return dimension(self.defining)

    def render(self) -> str:
        lines = [f"ring {' '.join(self.ambient.variables)}"]
        for name, f in self.generator_map.items():
            lines.append(f"# {name} -> {f}")
        gens = self.defining.gb()
        lines.append("ideal P = " + (", ".join(str(g) for g in gens) if gens else "0"))
        return "\n".join(lines)


def _fresh_names(ring: PolyRing, count: int, stem: str = "T") -> list[str]:
    names = []
    for i in range(1, count + 1):
        name = f"{stem}{i}"
        while name in ring.variables:
            name += "_"
        names.append(name)
    return names


def rees_presentation(I: Ideal) -> Presentation:
    """Presentation of R[It] in k[x, T]: eliminate t from (T_i - t*f_i)."""
    ring = I.ring
    gens = list(I.generators)
    if not gens:
        raise PresentationError("Rees algebra of the zero ideal")
    tnames = _fresh_names(ring, len(gens))
    tvar = "t"
    while tvar in ring.variables or tvar in tnames:
        tvar += "_"
    big = PolyRing(ring.variables + tuple(tnames) + (tvar,), ring.field)
    t = big.gen(tvar)
    rels = [big.gen(T) - t * f.to_ring(big) for T, f in zip(tnames, gens)]
    eliminated = eliminate(Ideal(big, rels), [tvar])
    ambient = PolyRing(ring.variables + tuple(tnames), ring.field)
    defining = subring_ideal(eliminated, ambient.variables)
    return Presentation(ambient, defining, dict(zip(tnames, gens)))


def fiber_presentation(I: Ideal) -> Presentation:
    """Presentation of F(I) = R[It] / m R[It] as a quotient of k[T_1..T_m]."""
    ring = I.ring
    if not I.generators:
        raise PresentationError("fiber ring of the zero ideal")
    if I.is_unit():
        raise PresentationError("fiber ring of the unit ideal")
    for g in I.generators:
        if 0 in g.coeffs:
            raise PresentationError(f"generator {g} is not in the maximal ideal")
    rees = rees_presentation(I)
    amb = rees.ambient
    xs = [amb.gen(v) for v in ring.variables]
    killed = Ideal(amb, list(rees.defining.generators) + xs)
    eliminated = eliminate(killed, list(ring.variables))
    tnames = list(rees.generator_map)
    defining = subring_ideal(eliminated, tnames)
    return Presentation(defining.ring, defining, rees.generator_map)


def analytic_spread(I: Ideal) -> int:
    """Krull dimension of the special fiber ring."""
    if not I.generators:
        raise PresentationError("analytic spread of the zero ideal")
    memo = I._memo
    if "spread" not in memo:
        memo["spread"] = fiber_presentation(I).dimension()
    return memo["spread"]


def _check_candidate(P: Presentation, q: Iterable[str]) -> list[int]:
    ring = P.ambient
    idx = sorted(ring.var_index(v) for v in q)
    return idx


def _inside_variable_ideal(P: Presentation, qidx: list[int]) -> bool:
    ring = P.ambient
    qset = set(qidx)
    for g in P.defining.generators:
        for e in g.coeffs:
            exps = ring.unpack(e)
            if not any(exps[i] for i in qset):
                return False
    return True


def _linear_relation_rank(P: Presentation, qidx: list[int], rng: random.Random) -> int:
    ring, F = P.ambient, P.ambient.field
    qset = set(qidx)
    values = {i: F.random(rng) for i in range(ring.nvars) if i not in qset}
    col = {i: k for k, i in enumerate(qidx)}
    rows = []
    for g in P.defining.generators:
        row = [0] * len(qidx)
        for e, c in g.coeffs.items():
            exps = ring.unpack(e)
            if sum(exps[i] for i in qidx) != 1:
                continue
            coeff = c
            for i, a in enumerate(exps):
                if i not in qset and a:
                    coeff = F.mul(coeff, F.pow(values[i], a))
            j = next(col[i] for i in qidx if exps[i])
            row[j] = F.add(row[j], coeff)
        if any(row):
            rows.append(row)
    return matrix_rank(F, rows)


def matrix_rank(F, rows: list[list[int]]) -> int:
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = F.inv(rows[rank][c])
        prow = [F.mul(v, inv) for v in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[r], prow)]
        rank += 1
    return rank


def generic_embedding_dimension(P: Presentation, q: Iterable[str], seed: int,
                                repeats: int = 3) -> int:
    """Embedding dimension of (ambient/defining) localized at the variable prime q.

    Variables outside q are specialized to random field values (one draw per
    derived seed); the answer is |q| minus the rank of the linear parts of the
    defining equations in the q-variables.  All draws must agree.

    The empty candidate stands for the generic point of a domain, whose
    localization is a field: the answer is 0 without further checks.
    """
    q = list(q)
    qidx = _check_candidate(P, q)
    if not qidx:
        return 0
    if not _inside_variable_ideal(P, qidx):
        raise PresentationError("candidate does not contain defining ideal")
    results = []
    for k in range(repeats):
        rng = random.Random(f"{seed}:edim:{k}")
        results.append(len(qidx) - _linear_relation_rank(P, qidx, rng))
    if len(set(results)) != 1:
        raise SpecializationError(f"specialization unstable: {results}")
    return results[0]


def minimal_prime_certify(P: Presentation, q: Iterable[str]) -> bool:
    """True iff (q) is the unique minimal prime: P ⊆ (q) ⊆ √P."""
    q = list(q)
    qidx = _check_candidate(P, q)
    if not _inside_variable_ideal(P, qidx):
        return False
    ring = P.ambient
    return all(radical_membership(ring.gen(i), P.defining) for i in qidx)


def derivative(f: Polynomial, i: int) -> Polynomial:
    ring, F = f.ring, f.ring.field
    step = ring.pack([1 if j == i else 0 for j in range(ring.nvars)])
    out = {}
    for e, c in f.coeffs.items():
        a = ring.unpack(e)[i]
        if a:
            v = F.mul(c, F.from_int(a))
            if v:
                out[e - step] = v
    return Polynomial(ring, out)


def _determinant(F, matrix: list[list[Polynomial]], ring: PolyRing) -> Polynomial:
    n = len(matrix)
    if n == 0:
        return ring.one()
    if n == 1:
        return matrix[0][0]
    total = ring.zero()
    for j in range(n):
        if not matrix[0][j].coeffs:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _determinant(F, minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_ideal(P: Presentation, codim: int) -> Ideal:
    """Defining ideal plus the codim x codim minors of its Jacobian matrix."""
    ring = P.ambient
    gens = P.defining.gb()
    jac = [[derivative(g, i) for i in range(ring.nvars)] for g in gens]
    minors = []
    for rows in combinations(range(len(gens)), codim):
        for cols in combinations(range(ring.nvars), codim):
            sub = [[jac[r][c] for c in cols] for r in rows]
            d = _determinant(ring.field, sub, ring)
            if d.coeffs:
                minors.append(d)
    return Ideal(ring, list(P.defining.generators) + minors)


def serre_R1_check(P: Presentation) -> bool:
    """Jacobian test for regularity in codimension one (equidimensional quotients)."""
    c = height(P.defining) if P.defining.generators else 0
    dim = P.dimension()
    sing = jacobian_ideal(P, c)
    return dimension(sing) <= dim - 2
