"""Exact mutations of potentials on integer lattices.

The package computes piecewise-linear and birational mutations over
skew-formed lattices, decides membership of Laurent polynomials in the
mutation-invariant rings attached to a collection of directions, presents
those rings by finite generator sets for the supported rank-2 shapes, and
ships randomized/exhaustive verification suites for the underlying
identities.  All arithmetic is exact (ints and Fractions); there are no
third-party runtime dependencies.
"""

from .lattice import (
    LatticeMap,
    SkewForm,
    complete_to_basis,
    is_primitive,
    pair,
    pl_mutate,
    pl_mutate_inv,
    primitive_part,
    reflect,
    sign_normalize,
    sl2_change_of_basis,
)
from .laurent import (
    BinomialFactor,
    BinomialRationalFn,
    DivisionResult,
    LaurentPoly,
    UnsupportedDenominatorError,
    binomial_divide,
    binomial_power,
    content,
    divide_exact,
    grade_by,
    is_divisible_up_to_unit,
    monomial_substitution,
)
from .mutation import (
    ExchangeCollection,
    Seed,
    b_matrix,
    bfz_matrix_mutate,
    collection_mutate_ordered,
    fn_mutate,
    fn_mutate_iter,
    reflection_matrix,
    reflection_substitution,
)
from .upperbound import (
    GeneratorPresentation,
    LaurentFailure,
    MembershipReport,
    UnsupportedShapeError,
    check_property_V,
    generators_for,
    member_via_generators,
    mutation_is_laurent,
    sample_ub_element,
    ub_member,
    verify_ring_identities,
    verify_vlemma,
)
from .exprparse import ExpressionError, parse_expression, parse_laurent
from .seedfile import SeedFormatError, load_seed, parse_seed, render_seed, save_seed
from .orbit import OrbitGraph, explore, to_dot
from .verify import SUITE_NAMES, SuiteResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "LatticeMap",
    "SkewForm",
    "complete_to_basis",
    "is_primitive",
    "pair",
    "pl_mutate",
    "pl_mutate_inv",
    "primitive_part",
    "reflect",
    "sign_normalize",
    "sl2_change_of_basis",
    "BinomialFactor",
    "BinomialRationalFn",
    "DivisionResult",
    "LaurentPoly",
    "UnsupportedDenominatorError",
    "binomial_divide",
    "binomial_power",
    "content",
    "divide_exact",
    "grade_by",
    "is_divisible_up_to_unit",
    "monomial_substitution",
    "ExchangeCollection",
    "Seed",
    "b_matrix",
    "bfz_matrix_mutate",
    "collection_mutate_ordered",
    "fn_mutate",
    "fn_mutate_iter",
    "reflection_matrix",
    "reflection_substitution",
    "GeneratorPresentation",
    "LaurentFailure",
    "MembershipReport",
    "UnsupportedShapeError",
    "check_property_V",
    "generators_for",
    "member_via_generators",
    "mutation_is_laurent",
    "sample_ub_element",
    "ub_member",
    "verify_ring_identities",
    "verify_vlemma",
    "ExpressionError",
    "parse_expression",
    "parse_laurent",
    "SeedFormatError",
    "load_seed",
    "parse_seed",
    "render_seed",
    "save_seed",
    "OrbitGraph",
    "explore",
    "to_dot",
    "SUITE_NAMES",
    "SuiteResult",
    "run_suite",
    "__version__",
]
