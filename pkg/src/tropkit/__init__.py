"""Exact tropical geometry: polynomials, plane curves, patchworking, floor diagrams, fans, abstract curves."""
from .core import (
    NEG_INF,
    PreconditionError,
    TropicalNumber,
    TropicalPoly,
    dequantized_add,
    factor,
    roots,
    trop_add,
    trop_mul,
)
from .laurent import LaurentQ
from .parsing import ParseError, parse_terms, parse_univariate
from .plane import BivariatePoly, dual_subdivision, stable_intersection, tropical_curve

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "BivariatePoly",
    "LaurentQ",
    "ParseError",
    "PreconditionError",
    "TropicalNumber",
    "TropicalPoly",
    "dequantized_add",
    "dual_subdivision",
    "factor",
    "parse_terms",
    "parse_univariate",
    "roots",
    "stable_intersection",
    "trop_add",
    "trop_mul",
    "tropical_curve",
]
