"""Exact scalar, polynomial, rational-function, matrix and lattice arithmetic."""

from .lattice import lattice_combination, lattice_min_multiple, smith_normal_form
from .matrix import Matrix, charpoly, cofactor_det, compound, det, inverse, kernel, rank, solve
from .params import ParamScalar, format_scalar, invert, is_formal, parse_scalar, to_scalar
from .poly import (
    Poly,
    RatFun,
    factored_str,
    invert_t,
    leading_at_infinity,
    poly_gcd,
    ratfun_make,
    series_coeffs,
    t_power,
)
from .rational import ExponentVector, factor_rational, format_rational, parse_rational

__all__ = [
    "ExponentVector", "Matrix", "ParamScalar", "Poly", "RatFun",
    "charpoly", "cofactor_det", "compound", "det", "factor_rational", "factored_str",
    "format_rational", "format_scalar", "inverse", "invert", "invert_t",
    "is_formal", "kernel", "lattice_combination", "lattice_min_multiple",
    "leading_at_infinity", "parse_rational", "parse_scalar", "poly_gcd", "rank",
    "ratfun_make", "series_coeffs", "smith_normal_form", "solve", "t_power",
    "to_scalar",
]
