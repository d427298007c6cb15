"""Exact and certified arithmetic kernels."""

from .field import (
    FieldError,
    KElem,
    SplitCubicField,
    conj,
    cubic_discriminant,
    cubic_irreducible,
    embed,
    is_root_of_unity,
    is_unit,
    min_poly,
    roots_in_field,
)
from .heights import h_prime, height_rel, log_abs, log_mahler_measure
from .interval import CInterval, RatInterval, atan_iv, log_iv, pi_iv, sqrt_iv
from .poly import PolyQ

__all__ = [
    "CInterval",
    "FieldError",
    "KElem",
    "PolyQ",
    "RatInterval",
    "SplitCubicField",
    "atan_iv",
    "conj",
    "cubic_discriminant",
    "cubic_irreducible",
    "embed",
    "h_prime",
    "height_rel",
    "is_root_of_unity",
    "is_unit",
    "log_abs",
    "log_iv",
    "log_mahler_measure",
    "min_poly",
    "pi_iv",
    "roots_in_field",
    "sqrt_iv",
]
