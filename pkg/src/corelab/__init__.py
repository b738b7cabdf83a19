"""corelab: cores of ideals in polynomial rings over finite fields."""

from .field import FieldDescriptor, FieldElement
from .poly import GREVLEX, LEX, MonomialOrder, PolyRing, Polynomial
from .ideal import (
    Ideal, colon, contains, dimension, eliminate, height, ideal_equal, ideal_sum, intersect,
    power, product, radical_membership, saturate,
)
from .groebner import buchberger, leading_term, normal_form
from .blowup import (
    Presentation, analytic_spread, fiber_presentation, generic_embedding_dimension,
    minimal_prime_certify, rees_presentation, serre_R1_check,
)
from .reductions import is_reduction, minimal_reduction, random_element, reduction_number
from .core import (
    core_auto, core_formula, core_monte_carlo, decomposition_check, hypothesis_report,
)
from .problem import Problem, load_problem, parse_problem
from .verify import verify_example
from .zerodim import zero_dim_colon

__version__ = "0.1.0"
