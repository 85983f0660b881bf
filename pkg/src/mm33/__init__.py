"""3x3 matrix multiplication with 23 ring products and 56 additions.

The package ships a ternary rank-23 bilinear scheme for 3x3 matrices, the
straight-line schedule that realizes it in 56 additions, and the machinery
to certify both: factor-file parsing, symbolic expansion, Brent-equation
verification, instrumented cost accounting, tensor symmetries, block
recursion for larger sizes, and randomized cross-ring testing.
"""

from .automorphism import cyclic_rotate, flip_product_signs, permute_products, transpose_vector
from .brent import BrentEquationId, BrentReport, verify_all_moduli, verify_brent
from .factors import (
    FactorFileError,
    Scheme,
    builtin_scheme,
    parse_factor_file,
    serialize_factor_file,
)
from .kernel import multiply_via_schedule, multiply_via_scheme, naive_multiply
from .recursion import RecursionConfig, multiply_recursive, predicted_counts
from .ring import CountingRing, IntegerRing, Mat2, Mat2Ring, PrimeField, scale_by_ternary
from .slp import (
    CostReport,
    Schedule,
    ScheduleError,
    builtin_schedule,
    count_cost,
    emit_expanded_presentation,
    expand_to_scheme,
    output_assembly_costs,
)

__all__ = [
    "BrentEquationId",
    "BrentReport",
    "CostReport",
    "CountingRing",
    "FactorFileError",
    "IntegerRing",
    "Mat2",
    "Mat2Ring",
    "PrimeField",
    "RecursionConfig",
    "Schedule",
    "ScheduleError",
    "Scheme",
    "builtin_scheme",
    "builtin_schedule",
    "count_cost",
    "cyclic_rotate",
    "emit_expanded_presentation",
    "expand_to_scheme",
    "flip_product_signs",
    "multiply_recursive",
    "multiply_via_schedule",
    "multiply_via_scheme",
    "naive_multiply",
    "output_assembly_costs",
    "parse_factor_file",
    "permute_products",
    "predicted_counts",
    "scale_by_ternary",
    "serialize_factor_file",
    "transpose_vector",
    "verify_all_moduli",
    "verify_brent",
]

__version__ = "0.1.0"
