"""Exact-arithmetic kernel for quantum Clifford algebras.

Graßmann and Clifford products and co-products by cliffordization,
antipodes and integrals of the convolution algebra, the Graßmann–Cayley
meet, renormalizing pairings, and fermionic operator ordering.
"""

from .cayley import bracket, erganzung, meet, meet_classical, vee
from .exterior import (
    DimensionError,
    Multivector,
    TensorPoly,
    basis,
    counit,
    gco,
    grade_involution,
    grade_project,
    reversion_wedge,
    wedge,
)
from .hopf import ConvCtx, Endo, LinForm, NoAntipode, antipode_solve, conv_unit, convolve, crossing, grassmann_antipode
from .pairing import VectorForm, cco, cmul, dotted_wedge, extend_pairing, left_contract, right_contract, wick_transform
from .parser import ParseError, format_expr, parse
from .renorm import GeneralPairing, OrderingForm, combined_pairing, rmul

__version__ = "0.1.0"

__all__ = [
    "ConvCtx",
    "DimensionError",
    "Endo",
    "GeneralPairing",
    "LinForm",
    "Multivector",
    "NoAntipode",
    "OrderingForm",
    "ParseError",
    "TensorPoly",
    "VectorForm",
    "antipode_solve",
    "basis",
    "bracket",
    "cco",
    "cmul",
    "combined_pairing",
    "conv_unit",
    "convolve",
    "counit",
    "crossing",
    "dotted_wedge",
    "erganzung",
    "extend_pairing",
    "format_expr",
    "gco",
    "grade_involution",
    "grade_project",
    "grassmann_antipode",
    "left_contract",
    "meet",
    "meet_classical",
    "parse",
    "reversion_wedge",
    "right_contract",
    "rmul",
    "vee",
    "wedge",
    "wick_transform",
]
