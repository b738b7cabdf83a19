"""Cores of ideals: the colon formula, its hypothesis gate, a Monte-Carlo
intersection-of-reductions oracle, and the power-decomposition test."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .blowup import (
    PresentationError, analytic_spread, fiber_presentation, generic_embedding_dimension,
    minimal_prime_certify,
)
from .ideal import (
    Ideal, colon, dimension, height, ideal_equal, ideal_sum, intersect, power, product,
    radical_membership,
)
from .reductions import (
    DEFAULT_BOUND, ReductionError, ReductionReport, is_reduction, local_equal_power,
    minimal_reduction, random_element,
)
from .zerodim import ZeroDimUnsupported, zero_dim_colon

N_WINDOW = 3
CORE_AUTO_REDUCTIONS = 2
DEFAULT_STALL = 16
MIN_STALL = 8


class CoreError(RuntimeError):
    pass


class StabilityError(CoreError):
    """core_formula gave different values across the (n, J) grid."""

    def __init__(self, message: str, first: tuple, second: tuple):
        super().__init__(message)
        self.first = first
        self.second = second


@dataclass
class CoreReport:
    value: Ideal
    n_used: int
    J_used: Ideal
    r: int
    spread: int
    height: int
    stability: list[tuple[int, int]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class McCoreReport:
    value: Ideal
    trials: int
    stabilized_after: int
    seeds: list[int]
    homogeneous: bool
    shrinks: list[int] = field(default_factory=list)  # trial indices where the value dropped


def is_m_primary(I: Ideal) -> bool:
    """I is primary to the homogeneous maximal ideal."""
    if not I.generators or I.is_unit():
        return False
    ring = I.ring
    if dimension(I) != 0:
        return False
    if any(0 in g.coeffs for g in I.gb()):
        return False
    return all(radical_membership(x, I) for x in ring.gens())


def _local_mode_ok(I: Ideal, J: Ideal) -> bool:
    m_primary = I._memo.get("m_primary")
    if m_primary is None:
        m_primary = I._memo["m_primary"] = is_m_primary(I)
    return m_primary or (I.is_homogeneous() and J.is_homogeneous())


def formula_threshold(r: int, spread: int, ht: int) -> int:
    return max(r - spread + ht, 0)


def core_formula(I: Ideal, J: Ideal, n: int, r: int | None = None,
                 bound: int = DEFAULT_BOUND) -> Ideal:
    """J^{n+1} : I^n in the local ring.

    J^{n+1} is first replaced by its m-primary part J^{n+1} + I^{n+1+r}
    (I^{n+1+r} = J^{n+1} I^r lies in J^{n+1} locally), which makes the
    polynomial-ring colon agree with the local one.  Over prime fields the
    colon is taken by linear algebra in the finite-dimensional quotient by
    the numerator; otherwise by intersections.
    """
    if r is None:
        report = is_reduction(J, I, bound)
        if not report.verified:
            raise ReductionError("J is not a verified reduction of I")
        r = report.r
    threshold = formula_threshold(r, analytic_spread(I), height(I))
    if n < threshold:
        raise CoreError(f"n = {n} is below the threshold max(r - l + g, 0) = {threshold}")
    if not _local_mode_ok(I, J):
        raise CoreError("local computation needs an m-primary ideal or homogeneous I and J")
    numerator = ideal_sum(power(J, n + 1), power(I, n + 1 + r))
    if n == 0:
        return numerator
    try:
        return zero_dim_colon(numerator, power(I, n))
    except ZeroDimUnsupported:
        return colon(numerator, power(I, n))


def characteristic_note(char: int, r: int, spread: int, ht: int) -> tuple[bool, str]:
    bound = r - spread + ht
    if char == 0 or char > bound:
        return True, f"char condition PASS: char {char} > r - l + g = {bound}"
    return False, (f"char condition FAIL: char {char} <= r - l + g = {bound}; "
                   "the formula value may differ from the true core")


def _derived_seeds(seed: int, count: int, tag: str) -> list[int]:
    rng = random.Random(f"{seed}:{tag}")
    return [rng.getrandbits(31) for _ in range(count)]


def core_auto(I: Ideal, seed: int, reductions: int = CORE_AUTO_REDUCTIONS,
              window: int = N_WINDOW, n: int | None = None) -> CoreReport:
    """Evaluate the core formula on a grid of sampled reductions and n values."""
    if not I.generators or I.is_unit():
        raise CoreError("core of the zero or unit ideal")
    ht, ell = height(I), analytic_spread(I)
    seeds = _derived_seeds(seed, reductions, "core")
    values: list[tuple[int, int, Ideal]] = []
    first_report: ReductionReport | None = None
    first_n = None
    max_r = 0
    for s in seeds:
        rep = minimal_reduction(I, s, spread=ell)
        max_r = max(max_r, rep.r)
        n0 = formula_threshold(rep.r, ell, ht)
        ns = [n] if n is not None else [n0 + k for k in range(window)]
        for nn in ns:
            value = core_formula(I, rep.J, nn, rep.r)
            if values and not ideal_equal(values[0][2], value):
                raise StabilityError(
                    f"core formula differs: (n={values[0][0]}, seed={values[0][1]}) vs "
                    f"(n={nn}, seed={s})", values[0][:2], (nn, s))
            values.append((nn, s, value))
        if first_report is None:
            first_report, first_n = rep, ns[0]
    notes = []
    _, char_note = characteristic_note(I.ring.field.characteristic, max_r, ell, ht)
    notes.append(char_note)
    notes.append("equimultiple (g = l)" if ht == ell else f"not equimultiple (g = {ht} < l = {ell})")
    if is_m_primary(I):
        notes.append("G_l and depth conditions automatic (m-primary ideal)")
    else:
        notes.append("G_l and depth conditions unchecked")
    return CoreReport(values[0][2], first_n, first_report.J, first_report.r, ell, ht,
                      [(nn, s) for nn, s, _ in values], notes)


def core_monte_carlo(I: Ideal, min_trials: int, stall: int = DEFAULT_STALL, seed: int = 0,
                     homogeneous: bool = False, max_trials: int | None = None) -> McCoreReport:
    """Intersect sampled minimal reductions until the value stops shrinking.

    Each reduction J with reduction number r is replaced by its m-primary part
    J + I^{r+1} before intersecting.  The result always contains the core.
    """
    if min_trials < 1:
        raise ValueError("min_trials must be at least 1")
    if stall < MIN_STALL:
        raise ValueError(f"stall must be at least {MIN_STALL}")
    if max_trials is None:
        max_trials = max(min_trials, stall) + 10 * stall
    ell = analytic_spread(I)
    master = random.Random(f"{seed}:mc")
    value: Ideal | None = None
    seeds, shrinks = [], []
    since = 0
    trials = 0
    while trials < max_trials:
        s = master.getrandbits(31)
        rep = minimal_reduction(I, s, homogeneous=homogeneous, spread=ell)
        if not _local_mode_ok(I, rep.J):
            raise CoreError("local computation needs an m-primary ideal or homogeneous input")
        local_J = ideal_sum(rep.J, power(I, rep.r + 1))
        trials += 1
        seeds.append(s)
        if value is None:
            value = Ideal(I.ring, local_J.gb())
            shrinks.append(trials)
            since = 0
        else:
            nxt = intersect(value, local_J)
            if ideal_equal(nxt, value):
                since += 1
            else:
                value = Ideal(I.ring, nxt.gb())
                shrinks.append(trials)
                since = 0
        if trials >= min_trials and since >= stall:
            break
    return McCoreReport(value, trials, since, seeds, homogeneous, shrinks)


@dataclass
class DecompositionResult:
    holds: bool
    window: tuple[int, int]
    failures: list[int]
    elements: list
    spread: int

    def __bool__(self):
        return self.holds


def decomposition_check(I: Ideal, s: int, n_max: int, seed: int) -> DecompositionResult:
    """Test I^n = (f_1..f_{l-1}) I^{n-1} + (f_l..f_{l+s})^n for n in the window
    [generic reduction number + 1, n_max], with f_i general elements of I."""
    if s < 1:
        raise ValueError("s must be positive")
    ell = analytic_spread(I)
    rseed, fseed = _derived_seeds(seed, 2, "decomp")
    n_lo = minimal_reduction(I, rseed, spread=ell).r + 1
    if n_max < n_lo:
        raise ValueError(f"n_max = {n_max} is below the window start {n_lo}")
    rng = random.Random(fseed)
    elems = [random_element(I, rng) for _ in range(ell + s)]
    head = Ideal(I.ring, elems[:ell - 1])
    tail = Ideal(I.ring, elems[ell - 1:])
    failures = []
    for n in range(n_lo, n_max + 1):
        rhs = power(tail, n)
        if head.generators:
            rhs = ideal_sum(product(head, power(I, n - 1)), rhs)
        if not local_equal_power(I, rhs, n):
            failures.append(n)
    return DecompositionResult(not failures, (n_lo, n_max), failures, elems, ell)


@dataclass
class HypothesisReport:
    height: int
    spread: int
    r: int
    threshold: int
    characteristic: int
    char_condition: bool
    equimultiple: bool
    m_primary: bool
    edims: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "g": self.height, "l": self.spread, "r": self.r, "n_threshold": self.threshold,
            "char": self.characteristic,
            "char_condition": "PASS" if self.char_condition else "FAIL",
            "equimultiple": self.equimultiple, "m_primary": self.m_primary,
            "edims": dict(self.edims),
        }


def hypothesis_report(I: Ideal, J: Ideal, primes: list[list[str]] | None = None,
                      seed: int = 0, bound: int = DEFAULT_BOUND) -> HypothesisReport:
    """Hypotheses of the core formula for the pair (I, J).

    ``primes`` are candidate minimal primes of the fiber ring, as lists of
    fiber variables; only certified ones get an embedding dimension.
    """
    report = is_reduction(J, I, bound)
    if not report.verified:
        raise ReductionError("J is not a verified reduction of I")
    ht, ell, r = height(I), analytic_spread(I), report.r
    char = I.ring.field.characteristic
    ok, note = characteristic_note(char, r, ell, ht)
    hr = HypothesisReport(ht, ell, r, formula_threshold(r, ell, ht), char, ok, ht == ell,
                          is_m_primary(I), notes=[note])
    if primes:
        P = fiber_presentation(I)
        for q in primes:
            label = "(" + ",".join(q) + ")"
            try:
                certified = minimal_prime_certify(P, q)
            except (KeyError, PresentationError) as exc:
                hr.notes.append(f"{label}: {exc}")
                continue
            if not certified:
                hr.notes.append(f"{label}: not certified as the unique minimal prime")
                continue
            hr.edims[label] = generic_embedding_dimension(P, q, seed)
            hr.notes.append(f"{label}: embedding dimension {hr.edims[label]}"
                            + (" (<= 1)" if hr.edims[label] <= 1 else " (> 1)"))
    return hr
