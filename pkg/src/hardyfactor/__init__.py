"""Deep zeros of linear combinations and singular inner factors in the unit disk.

The public surface re-exports the main types and operations; see the module
docstrings for details.
"""

from .errors import HardyFactorError
from .poly import ExactComplex, Polynomial, poly_roots
from .structured import (
    AtomicSingularMeasure,
    BlaschkeProduct,
    FrostmanShift,
    StructuredFunction,
    structured_combine,
)
from .wronskian import (
    CoefficientVector,
    independence_check,
    nullspace_coefficients,
    wronskian,
    wronskian_exact,
    wronskian_matrix_at,
    wronskian_structured,
)
from .zeros import count_zeros, deep_zero_set, locate_zeros, multiplicity_at, zero_inventory
from .factor import (
    atom_mass_at,
    circle_mean_log_modulus,
    hardy_sobolev_diagnostic,
    measure_leq,
    outerness_test,
    singular_divisibility_check,
    total_singular_mass,
)

__version__ = "0.1.0"

__all__ = [
    "HardyFactorError",
    "ExactComplex",
    "Polynomial",
    "poly_roots",
    "AtomicSingularMeasure",
    "BlaschkeProduct",
    "FrostmanShift",
    "StructuredFunction",
    "structured_combine",
    "CoefficientVector",
    "independence_check",
    "nullspace_coefficients",
    "wronskian",
    "wronskian_exact",
    "wronskian_matrix_at",
    "wronskian_structured",
    "count_zeros",
    "deep_zero_set",
    "locate_zeros",
    "multiplicity_at",
    "zero_inventory",
    "atom_mass_at",
    "circle_mean_log_modulus",
    "hardy_sobolev_diagnostic",
    "measure_leq",
    "outerness_test",
    "singular_divisibility_check",
    "total_singular_mass",
]
