"""Exact rational and prime-field polynomial arithmetic."""

from .factor import DEFAULT_SEED, FactorList, factor_mod_p, factor_over_rationals
from .parse import parse_poly
from .poly import (GF, QQ, PrimeField, UniPoly, discriminant, format_rational, gcd,
                   rational_json, resultant, squarefree_part, to_rational, xgcd)

__all__ = [
    "DEFAULT_SEED", "FactorList", "GF", "PrimeField", "QQ", "UniPoly",
    "discriminant", "factor_mod_p", "factor_over_rationals", "format_rational",
    "gcd", "parse_poly", "rational_json", "resultant", "squarefree_part",
    "to_rational", "xgcd",
]
