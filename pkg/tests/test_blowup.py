import pytest
from hypothesis import given, settings, strategies as st

from corelab.blowup import (
    Presentation, PresentationError, analytic_spread, fiber_presentation,
    generic_embedding_dimension, minimal_prime_certify, rees_presentation, serre_R1_check,
)
from corelab.field import FieldDescriptor
from corelab.ideal import Ideal, height
from corelab.poly import PolyRing
from corelab.reductions import minimal_reduction

GF = FieldDescriptor.gf2(16)
FP = FieldDescriptor.prime(32003)
EX52 = ["x^6", "x^5*y^3", "x^4*y^4", "x^2*y^8", "y^9"]
EX53_K = ["x^9", "x^5*y^4", "x^3*y^6", "x^2*y^7"]

CORPUS = [
    ["x", "y"], ["x^2", "x*y", "y^2"], ["x^2", "y^3"], ["x^2", "x*y"], ["x^2"],
    EX52, EX53_K, EX53_K + ["y^8"],
]


def ideal(gens, F=FP):
    return Ideal(PolyRing(["x", "y"], F), gens)


def test_rees_presentations():
    P = rees_presentation(ideal(["x", "y"]))
    assert P.defining == Ideal(P.ambient, ["y*T1 - x*T2"])
    assert rees_presentation(ideal(["x"])).defining.is_zero()
    P = rees_presentation(ideal(["x^2", "x*y", "y^2"]))
    for rel in ["T1*T3 - T2^2", "y*T1 - x*T2", "y*T2 - x*T3"]:
        assert P.ambient.parse(rel) in P.defining


def test_fiber_presentations():
    P = fiber_presentation(ideal(EX52, GF))
    assert P.defining == Ideal(P.ambient, ["T2^2", "T2*T4", "T3*T4", "T4^2", "T3^2 - T1*T4"])
    assert [str(f) for f in P.generator_map.values()] == EX52
    assert fiber_presentation(ideal(["x", "y"])).defining.is_zero()
    P = fiber_presentation(ideal(["x^2", "x*y", "y^2"]))
    assert P.defining == Ideal(P.ambient, ["T1*T3 - T2^2"])
    assert P.ambient.variables == ("T1", "T2", "T3")


def test_fiber_rejects_bad_input():
    with pytest.raises(PresentationError):
        fiber_presentation(ideal(["1"]))
    with pytest.raises(PresentationError):
        fiber_presentation(ideal(["x + 1", "y"]))
    with pytest.raises(PresentationError):
        fiber_presentation(ideal([]))


def test_render_shows_generator_map():
    text = fiber_presentation(ideal(["x^2", "x*y", "y^2"])).render()
    assert "# T1 -> x^2" in text and "ideal P = T2^2 - T1*T3" in text


def test_analytic_spread_examples():
    assert analytic_spread(ideal(EX52, GF)) == 2
    assert analytic_spread(ideal(["x^2"])) == 1
    assert analytic_spread(ideal(["x^2", "x*y"])) == 2
    with pytest.raises(PresentationError):
        analytic_spread(ideal([]))


@pytest.mark.parametrize("gens", CORPUS)
def test_spread_bounds_and_fiber_shape(gens):
    I = ideal(gens)
    P = fiber_presentation(I)
    ell = analytic_spread(I)
    assert height(I) <= ell <= 2
    assert P.ambient.nvars == len(I.generators)
    assert P.dimension() == ell <= len(I.generators)


@pytest.mark.parametrize("gens", CORPUS)
def test_rees_relations_vanish_under_substitution(gens):
    I = ideal(gens)
    P = rees_presentation(I)
    big = PolyRing(P.ambient.variables + ("t",), FP)
    t = big.gen("t")
    images = {big.var_index(T): t * f.to_ring(big) for T, f in P.generator_map.items()}
    for g in P.defining.gb():
        assert not g.to_ring(big).substitute(images)


@pytest.mark.parametrize("gens", [["x^2", "x*y", "y^2"], EX53_K, ["x^3", "y^3"]])
def test_fiber_relations_vanish_for_equigenerated(gens):
    I = ideal(gens)
    P = fiber_presentation(I)
    big = PolyRing(("x", "y") + P.ambient.variables, FP)
    images = {big.var_index(T): f.to_ring(big) for T, f in P.generator_map.items()}
    for g in P.defining.gb():
        assert not g.to_ring(big).substitute(images)


@pytest.mark.parametrize("gens", [["x", "y"], ["x^2", "x*y", "y^2"], EX52, ["x^2", "y^3"]])
def test_minimal_reductions_preserve_spread(gens):
    I = ideal(gens)
    J = minimal_reduction(I, seed=4).J
    assert analytic_spread(J) == analytic_spread(I)


def test_embedding_dimension_examples():
    P = fiber_presentation(ideal(EX52, GF))
    assert [generic_embedding_dimension(P, ["T2", "T3", "T4"], s) for s in range(3)] == [2, 2, 2]
    T = PolyRing(["T1", "T2"], FP)
    free = Presentation(T, Ideal(T, []))
    assert generic_embedding_dimension(free, ["T1", "T2"], 0) == 2
    assert generic_embedding_dimension(free, [], 0) == 0
    T3 = PolyRing(["T1", "T2", "T3"], FP)
    cone = Presentation(T3, Ideal(T3, ["T1*T3 - T2^2"]))
    assert generic_embedding_dimension(cone, ["T1", "T2", "T3"], 0) == 3  # not minimal
    assert generic_embedding_dimension(cone, [], 0) == 0


def test_embedding_dimension_rejects_non_containing_candidate():
    T = PolyRing(["T1", "T2"], FP)
    P = Presentation(T, Ideal(T, ["T1*T2 + T2^2 + T1"]))
    with pytest.raises(PresentationError, match="candidate does not contain defining ideal"):
        generic_embedding_dimension(P, ["T2"], 0)


def test_minimal_prime_certificates():
    P = fiber_presentation(ideal(EX52, GF))
    assert minimal_prime_certify(P, ["T2", "T3", "T4"])
    assert not minimal_prime_certify(P, ["T2", "T3"])
    T = PolyRing(["T1", "T2"], FP)
    assert not minimal_prime_certify(Presentation(T, Ideal(T, ["T1*T2"])), ["T1"])
    assert minimal_prime_certify(Presentation(T, Ideal(T, [])), [])


def test_serre_R1():
    T = PolyRing(["T1", "T2"], FP)
    assert serre_R1_check(Presentation(T, Ideal(T, [])))
    T3 = PolyRing(["T1", "T2", "T3"], GF)
    assert serre_R1_check(Presentation(T3, Ideal(T3, ["T1*T3 - T2^2"])))
    assert not serre_R1_check(fiber_presentation(ideal(EX53_K, GF)))


@settings(max_examples=15)
@given(st.integers(0, 10_000))
def test_embedding_dimension_is_seed_stable(seed):
    P = fiber_presentation(ideal(EX52, GF))
    assert generic_embedding_dimension(P, ["T2", "T3", "T4"], seed) == 2
