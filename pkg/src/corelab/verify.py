"""Reproduction bundles for the worked examples and the m-power suite."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass

from .blowup import fiber_presentation, generic_embedding_dimension, minimal_prime_certify
from .core import core_auto, core_formula, core_monte_carlo, decomposition_check
from .field import FieldDescriptor
from .ideal import Ideal, contains, ideal_equal, ideal_sum, power
from .poly import PolyRing
from .reductions import is_reduction

EX52_GENERATORS = ["x^6", "x^5*y^3", "x^4*y^4", "x^2*y^8", "y^9"]
EX52_REDUCTION = ["x^6", "y^9"]
EX52_FIBER = ["T2^2", "T2*T4", "T3*T4", "T4^2", "T3^2 - T1*T4"]
EX52_PRIME = ["T2", "T3", "T4"]

EX53_K = ["x^9", "x^5*y^4", "x^3*y^6", "x^2*y^7"]
EX53_GENERATORS = EX53_K + ["y^8"]
EX53_REDUCTION = ["x^9", "y^8"]
EX53_EXTRA = ["x*y^12", "y^13"]

GF2_16 = FieldDescriptor.gf2(16)
F32003 = FieldDescriptor.prime(32003)
EXAMPLES = ("5.2", "5.3", "mpowers")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return f"{state}  {self.name}  [{self.seconds:.2f} s]  {self.detail}"


def plane(field: FieldDescriptor) -> PolyRing:
    return PolyRing(["x", "y"], field)


def _run(name, fn) -> Check:
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its reason
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, bool(passed), detail, time.perf_counter() - t0)


def _example_52(seed: int) -> list[Check]:
    R2 = plane(GF2_16)
    I = Ideal(R2, EX52_GENERATORS)
    H = Ideal(R2, EX52_REDUCTION)
    checks = []

    def fiber():
        P = fiber_presentation(I)
        target = Ideal(P.ambient, EX52_FIBER)
        return ideal_equal(P.defining, target), f"F(I) = k[T]/({', '.join(P.defining.canonical_strings())})"

    def rednum():
        rep = is_reduction(H, I)
        return rep.verified and rep.r == 2, f"r_H(I) = {rep.r}"

    def edim():
        P = fiber_presentation(I)
        cert = minimal_prime_certify(P, EX52_PRIME)
        e = generic_embedding_dimension(P, EX52_PRIME, seed)
        return cert and e == 2, f"(T2,T3,T4) certified={cert}, edim = {e}"

    def decomp():
        d1 = decomposition_check(I, 1, 5, seed)
        d2 = decomposition_check(I, 2, 5, seed)
        return (not d1.holds) and d2.holds, \
            f"s=1 holds={d1.holds} on {d1.window}, s=2 holds={d2.holds} on {d2.window}"

    def contrast():
        out = []
        for F, expect_equal in ((F32003, True), (GF2_16, False)):
            R = plane(F)
            II, HH = Ideal(R, EX52_GENERATORS), Ideal(R, EX52_REDUCTION)
            formula = core_formula(II, HH, 2, 2)
            mc = core_monte_carlo(II, 40, 16, seed)
            out.append(ideal_equal(formula, mc.value) == expect_equal)
        return all(out), "mc-core = formula over F_32003, mc-core != formula over GF(2^16)"

    for name, fn in (("fiber presentation", fiber), ("reduction number", rednum),
                     ("embedding dimension", edim), ("decomposition s=1 fails, s=2 holds", decomp),
                     ("characteristic contrast", contrast)):
        checks.append(_run(name, fn))
    return checks


def _example_53(seed: int) -> list[Check]:
    R2 = plane(GF2_16)
    I = Ideal(R2, EX53_GENERATORS)
    H = Ideal(R2, EX53_REDUCTION)
    formula = core_formula(I, H, 2, 2)
    expected = ideal_sum(formula, Ideal(R2, EX53_EXTRA))

    def rednum():
        rep = is_reduction(H, I)
        return rep.verified and rep.r == 2, f"r_H(I) = {rep.r}"

    def mc():
        rep = core_monte_carlo(I, 40, 16, seed)
        return ideal_equal(rep.value, expected), \
            f"{rep.trials} trials, value ({', '.join(rep.value.canonical_strings())})"

    def strict():
        return not contains(formula, expected), "x*y^12 has nonzero normal form modulo H^3 : I^2"

    return [_run("reduction number", rednum), _run("mc-core = H^3:I^2 + (x*y^12, y^13)", mc),
            _run("strict containment", strict)]


def _m_powers(seed: int) -> list[Check]:
    R = plane(F32003)
    m = Ideal.maximal(R)
    checks = []
    for t in (1, 2, 3):
        def formula(t=t):
            rep = core_auto(power(m, t), seed)
            return ideal_equal(rep.value, power(m, 2 * t - 1)), \
                f"core(m^{t}) = ({', '.join(rep.value.canonical_strings())})"
        checks.append(_run(f"core(m^{t}) = m^{2 * t - 1} by formula", formula))
    for t in (1, 2):
        def mc(t=t):
            rep = core_monte_carlo(power(m, t), 40, 16, seed)
            return ideal_equal(rep.value, power(m, 2 * t - 1)), f"{rep.trials} trials"
        checks.append(_run(f"mc-core(m^{t}) = m^{2 * t - 1}", mc))
    return checks


def verify_example(example: str, seed: int = 1) -> list[Check]:
    """Run one bundle; each check reports its own pass/fail and timing."""
    bundles = {"5.2": _example_52, "5.3": _example_53, "mpowers": _m_powers}
    if example not in bundles:
        raise KeyError(f"unknown example {example!r}; choose from {', '.join(EXAMPLES)}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return bundles[example](seed)
