"""Certified bounds on the algebraic unknotting number of a knot from its Seifert matrix."""

__version__ = "0.1.0"

from knotua._kernels import BACKEND
from knotua.laurent import LaurentPoly, doteq, laurent_gcd, normalize_alexander
from knotua.matrix import LaurentMatrix, determinant
from knotua.seifert import SeifertMatrix, alexander_polynomial, signature_at_minus_one, validate_seifert

__all__ = [
    "BACKEND",
    "LaurentMatrix",
    "LaurentPoly",
    "SeifertMatrix",
    "alexander_polynomial",
    "determinant",
    "doteq",
    "laurent_gcd",
    "normalize_alexander",
    "signature_at_minus_one",
    "validate_seifert",
]
