"""Characteristic elements, Koszul homology and Akashi series over Z_p[[T]]."""
from .errors import AkashiError, CertificateError, PrecisionError
from .padic import PadicInt, power_tower, unit_inverse, valuation
from .series import (
    CharElement,
    LambdaSeries,
    leading_term_at_zero,
    normalize_mod_units,
    ord_at_zero,
    substitute_tower,
    weierstrass_prepare,
)
from .modules import (
    FiniteFormModule,
    PresentationModule,
    char_of,
    char_of_finite_form,
    char_of_presentation,
    direct_sum,
    induce,
    rank_one_twist,
)
from .koszul import SigmaModule, akashi_series, koszul_homology, verify_multiplicativity
from .elliptic import (
    CurveData,
    LocalPlaceData,
    count_points,
    euler_factor_at_one,
    local_correction_series,
    mu_valuation,
)
from .assembler import (
    FormulaReport,
    assemble_gl2,
    assemble_main,
    cyclotomic_bookkeeping,
    euler_characteristic_correction,
)

__version__ = "0.1.0"

__all__ = [
    "AkashiError",
    "CertificateError",
    "PrecisionError",
    "PadicInt",
    "power_tower",
    "unit_inverse",
    "valuation",
    "CharElement",
    "LambdaSeries",
    "leading_term_at_zero",
    "normalize_mod_units",
    "ord_at_zero",
    "substitute_tower",
    "weierstrass_prepare",
    "FiniteFormModule",
    "PresentationModule",
    "char_of",
    "char_of_finite_form",
    "char_of_presentation",
    "direct_sum",
    "induce",
    "rank_one_twist",
    "SigmaModule",
    "akashi_series",
    "koszul_homology",
    "verify_multiplicativity",
    "CurveData",
    "LocalPlaceData",
    "count_points",
    "euler_factor_at_one",
    "local_correction_series",
    "mu_valuation",
    "FormulaReport",
    "assemble_gl2",
    "assemble_main",
    "cyclotomic_bookkeeping",
    "euler_characteristic_correction",
]
