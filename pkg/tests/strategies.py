"""Hypothesis strategies for small polynomials and monomial ideals."""

from hypothesis import strategies as st

from corelab.field import FieldDescriptor
from corelab.ideal import Ideal
from corelab.poly import PolyRing

F101 = FieldDescriptor.prime(101)
RINGS = {n: PolyRing(["x", "y", "z"][:n], F101) for n in (1, 2, 3)}


def polynomials(ring, max_terms=4, max_exp=3):
    term = st.tuples(st.lists(st.integers(0, max_exp), min_size=ring.nvars, max_size=ring.nvars),
                     st.integers(1, 100))
    return st.lists(term, min_size=1, max_size=max_terms).map(ring.from_terms).filter(bool)


@st.composite
def small_ideals(draw, nvars=None, max_gens=3):
    n = draw(st.sampled_from([2, 3])) if nvars is None else nvars
    ring = RINGS[n]
    gens = draw(st.lists(polynomials(ring), min_size=1, max_size=max_gens))
    return Ideal(ring, gens)


@st.composite
def monomial_ideals(draw, ring=None, max_gens=4, max_exp=12):
    if ring is None:
        ring = RINGS[draw(st.sampled_from([1, 2, 3]))]
    exps = st.lists(st.integers(0, max_exp), min_size=ring.nvars, max_size=ring.nvars)
    mons = draw(st.lists(exps, min_size=1, max_size=max_gens))
    return Ideal(ring, [ring.monomial(e) for e in mons])
