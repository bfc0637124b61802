"""Exact commutative algebra substrate."""

from .cyclotomic import Cyclotomic, cyclo_arith
from .laurent import (MultiLaurent, RatFunc, laurent_det, laurent_divexact,
                      laurent_gcd, substitute)
from .matrices import IntMatrix, char_poly, sigma_plus, snf
from .palette import GroupElement, PaletteGroup

__all__ = [
    "Cyclotomic", "cyclo_arith",
    "MultiLaurent", "RatFunc", "laurent_det", "laurent_divexact",
    "laurent_gcd", "substitute",
    "IntMatrix", "char_poly", "sigma_plus", "snf",
    "GroupElement", "PaletteGroup",
]
