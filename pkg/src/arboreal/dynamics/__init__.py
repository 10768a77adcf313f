"""Exact polynomial dynamics over the rationals."""

from .discriminant import (A, B, DiscriminantReport, critical_products, discriminant,
                           discriminant_values, factor_integer, format_factored,
                           kronecker_like_symbol, potential_nonsquare)
from .orbits import (CriticalOrbitData, check_square_level, classify_overgroup,
                     critical_points, detect_pcf, disc_square_level)
from .polynomial import (MAX_DEGREE, RationalPolynomial, discriminant_by_resultant,
                         is_rational_square, iterate, rational_roots, resultant)

__all__ = [
    "A", "B", "CriticalOrbitData", "DiscriminantReport", "MAX_DEGREE", "RationalPolynomial",
    "check_square_level", "classify_overgroup", "critical_points", "critical_products",
    "detect_pcf", "disc_square_level", "discriminant", "discriminant_by_resultant",
    "discriminant_values", "factor_integer", "format_factored", "is_rational_square",
    "iterate", "kronecker_like_symbol", "potential_nonsquare", "rational_roots", "resultant",
]
