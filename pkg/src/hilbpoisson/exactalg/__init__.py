"""Exact rational arithmetic: polynomials, matrices, Smith forms, 2-forms."""

from .forms import TwoForm, trace_d_wedge_d
from .linalg import SingularMatrix
from .matrix import PolyMatrix, ShapeError, signed_maximal_minors
from .parse import ParseError, parse_poly, parse_rational
from .poly import Poly, PolyRing, VariableMismatch, as_fraction, canonical_names, poly_ring
from .snf import PrecisionExhausted, SnfResult, generic_rank, snf_dvr

__all__ = [
    "Poly",
    "PolyRing",
    "PolyMatrix",
    "TwoForm",
    "SnfResult",
    "ParseError",
    "PrecisionExhausted",
    "ShapeError",
    "SingularMatrix",
    "VariableMismatch",
    "as_fraction",
    "canonical_names",
    "generic_rank",
    "parse_poly",
    "parse_rational",
    "poly_ring",
    "signed_maximal_minors",
    "snf_dvr",
    "trace_d_wedge_d",
]
