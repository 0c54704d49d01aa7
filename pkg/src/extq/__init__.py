"""Ext^1 between simple modules for quantum groups at roots of unity.

The computation reduces to Kazhdan-Lusztig mu-coefficients of the affine
Weyl group, Steinberg decompositions and classical tensor multiplicities.
"""

__version__ = "0.1.0"

from .rootdata import RootSystem, QContext, build_root_system, make_context, steinberg_decompose
from .affine import AffineElement, AffineWeylGroup, affine_group
from .kl import IntPolynomial, KLTable, bruhat_interval, kl_polynomial, mu
from .charalg import (
    FormalCharacter,
    character_decompose,
    euler_characteristic,
    tensor_multiplicity,
    weight_multiplicity,
    weyl_character,
    weyl_dimension,
)
from .extcalc import Case, ExtResult, check_A0_bound, e1_multiplicities, ext_dimension, ext_regular_pair
from .sumformula import jantzen_sum_rhs, verify_very_special

__all__ = [
    "RootSystem",
    "QContext",
    "build_root_system",
    "make_context",
    "steinberg_decompose",
    "AffineElement",
    "AffineWeylGroup",
    "affine_group",
    "IntPolynomial",
    "KLTable",
    "bruhat_interval",
    "kl_polynomial",
    "mu",
    "FormalCharacter",
    "character_decompose",
    "euler_characteristic",
    "tensor_multiplicity",
    "weight_multiplicity",
    "weyl_character",
    "weyl_dimension",
    "Case",
    "ExtResult",
    "check_A0_bound",
    "e1_multiplicities",
    "ext_dimension",
    "ext_regular_pair",
    "jantzen_sum_rhs",
    "verify_very_special",
]
