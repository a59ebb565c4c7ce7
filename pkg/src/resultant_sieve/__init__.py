"""Exact resultants against quadratics, conic solubility sieves and class-group statistics."""
from .resultant import IntPoly, QuadTriple, resultant

__all__ = ["IntPoly", "QuadTriple", "resultant"]
__version__ = "0.1.0"
