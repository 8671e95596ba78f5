"""Exact arithmetic: Laurent polynomials, polynomial matrices, intervals."""

from .intervals import (
    RationalInterval,
    count_roots,
    interval_eigenvector,
    isolate_perron_root,
    refine_root,
    sturm_sequence,
)
from .laurent import LaurentPoly, poly_arith, poly_gcd, poly_gcd_many
from .matrices import (
    IntegerMatrix,
    LaurentMatrix,
    char_poly,
    char_poly_laurent,
    determinant,
    hermite_normal_form,
    integer_determinant,
    integer_kernel_basis,
    maximal_minors,
)

__all__ = [
    "IntegerMatrix",
    "LaurentMatrix",
    "LaurentPoly",
    "RationalInterval",
    "char_poly",
    "char_poly_laurent",
    "count_roots",
    "determinant",
    "hermite_normal_form",
    "integer_determinant",
    "integer_kernel_basis",
    "interval_eigenvector",
    "isolate_perron_root",
    "maximal_minors",
    "poly_arith",
    "poly_gcd",
    "poly_gcd_many",
    "refine_root",
    "sturm_sequence",
]
