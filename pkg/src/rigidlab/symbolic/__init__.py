"""Exact arithmetic for skew polynomials, ``V_n`` tuples and finite localization."""
from .carriers import (
                       MODULE,
                       RING,
                       ExactCarrier,
                       ExactInt,
                       FiniteElem,
                       FreeAlgebra,
                       IntMatrix2,
                       PolyCoset,
)
from .localization import Localization, default_multiplicative_set, localize_finite
from .skewpoly import (
                       TO_LAURENT,
                       TO_POLYNOMIAL,
                       SkewPoly,
                       apply_sigma_coefficientwise,
                       laurent_witness_transfer,
                       poly_coset_arith,
                       rigidity_products,
                       skew_product,
                       skew_rigidity_products,
                       vn_apply_sigma,
                       vn_is_zero,
                       vn_symbolic_action,
)

FreeCoset = FreeAlgebra

__all__ = [
                       "MODULE",
                       "RING",
                       "TO_LAURENT",
                       "TO_POLYNOMIAL",
                       "ExactCarrier",
                       "ExactInt",
                       "FiniteElem",
                       "FreeAlgebra",
                       "FreeCoset",
                       "IntMatrix2",
                       "Localization",
                       "PolyCoset",
                       "SkewPoly",
                       "apply_sigma_coefficientwise",
                       "default_multiplicative_set",
                       "laurent_witness_transfer",
                       "localize_finite",
                       "poly_coset_arith",
                       "rigidity_products",
                       "skew_product",
                       "skew_rigidity_products",
                       "vn_apply_sigma",
                       "vn_is_zero",
                       "vn_symbolic_action",
]
