"""General elements, reduction tests, reduction numbers and minimal reductions.

Ideals are regarded in the localization of the polynomial ring at the
homogeneous maximal ideal m.  Equalities of the form I^{r+1} = J I^r are
tested through Nakayama's lemma as I^{r+1} ⊆ J I^r + m I^{r+1}: the right-hand
side is m-primary whenever I is, so a polynomial-ring containment test decides
the local question exactly even when J has zeros away from the origin.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .blowup import analytic_spread
from .ideal import Ideal, contains, ideal_sum, power, product
from .poly import Polynomial

DEFAULT_BOUND = 20
SMALL_FIELD = 1 << 16
MAX_REDRAWS = 8
MAX_RETRIES = 4


class ReductionError(RuntimeError):
    pass


class GenericityError(ReductionError):
    pass


@dataclass
class ReductionReport:
    J: Ideal
    verified: bool
    r: int | None
    bound_used: int
    seed: int | None = None
    coefficients: list[list[int]] = field(default_factory=list)

    def summary(self) -> str:
        state = f"reduction, r = {self.r}" if self.verified else \
            f"not a reduction at bound {self.bound_used}"
        return state


def maximal_ideal(I: Ideal) -> Ideal:
    return Ideal.maximal(I.ring)


def local_equal_power(I: Ideal, lower: Ideal, n: int) -> bool:
    """I^n == lower locally, for lower ⊆ I^n (tested as I^n ⊆ lower + m I^n)."""
    In = power(I, n)
    anchor = product(maximal_ideal(I), In)
    return contains(ideal_sum(lower, anchor), In)


def _check_field(I: Ideal):
    if I.ring.field.order < SMALL_FIELD:
        warnings.warn(f"{I.ring.field} is small; general elements may not be general",
                      stacklevel=3)


def degree_classes(I: Ideal) -> dict[int, list[Polynomial]]:
    """Homogeneous generators grouped by degree."""
    classes: dict[int, list[Polynomial]] = {}
    for g in I.generators:
        if not g.is_homogeneous():
            raise ReductionError(f"homogeneous sampling needs homogeneous generators; {g} is not")
        classes.setdefault(g.degree(), []).append(g)
    return dict(sorted(classes.items()))


def random_element(I: Ideal, rng: random.Random, homogeneous: bool = False,
                   degree: int | None = None, record: list | None = None) -> Polynomial:
    """A random k-linear combination of the generators of I.

    With ``homogeneous`` set, only generators of a single degree are combined
    (``degree`` picks the class; otherwise one is drawn at random).
    """
    _check_field(I)
    F = I.ring.field
    gens = list(I.generators)
    if not gens:
        raise ReductionError("random element of the zero ideal")
    if homogeneous:
        classes = degree_classes(I)
        if degree is None:
            degree = rng.choice(sorted(classes))
        if degree not in classes:
            raise ReductionError(f"no generators of degree {degree}")
        pool = set(id(g) for g in classes[degree])
    else:
        pool = None
    for _ in range(MAX_REDRAWS):
        lambdas = [F.random(rng) if pool is None or id(g) in pool else 0 for g in gens]
        f = I.ring.zero()
        for lam, g in zip(lambdas, gens):
            if lam:
                f = f + g.scale(lam)
        if f.coeffs:
            if record is not None:
                record.append(lambdas)
            return f
    raise GenericityError(f"{MAX_REDRAWS} consecutive zero draws")


def is_reduction(J: Ideal, I: Ideal, bound: int = DEFAULT_BOUND,
                 seed: int | None = None) -> ReductionReport:
    """Search r = 0..bound for I^{r+1} = J I^r (in the local ring)."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if not contains(I, J):
        raise ReductionError("J is not contained in I")
    for r in range(bound + 1):
        if local_equal_power(I, product(J, power(I, r)), r + 1):
            return ReductionReport(J, True, r, bound, seed)
    return ReductionReport(J, False, None, bound, seed)


def reduction_number(J: Ideal, I: Ideal, bound: int = DEFAULT_BOUND) -> int:
    report = is_reduction(J, I, bound)
    if not report.verified:
        raise ReductionError(f"J is not a reduction of I at bound {bound}")
    return report.r


def _degree_patterns(I: Ideal, count: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(sorted(degree_classes(I)), count))


def minimal_reduction(I: Ideal, seed: int, homogeneous: bool = False,
                      bound: int = DEFAULT_BOUND, spread: int | None = None) -> ReductionReport:
    """Sample ell(I) general elements and verify that they generate a reduction."""
    if not I.generators or I.is_unit():
        raise ReductionError("minimal reduction needs a nonzero proper ideal")
    ell = spread if spread is not None else analytic_spread(I)
    rng = random.Random(seed)
    patterns = _degree_patterns(I, ell) if homogeneous else [None]
    for attempt in range(MAX_RETRIES):
        for pattern in patterns:
            record: list = []
            if pattern is None:
                elems = [random_element(I, rng, record=record) for _ in range(ell)]
            else:
                elems = [random_element(I, rng, True, d, record) for d in pattern]
            J = Ideal(I.ring, elems)
            report = is_reduction(J, I, bound, seed)
            if report.verified:
                report.coefficients = record
                return report
    raise GenericityError("genericity failure (enlarge field or reseed)")
