"""Exact perfect state transfer decisions for symmetric integer matrices.

The exact layer (poly, matrix, quadfield, support, decider) never uses
floating point; the oracle module is a numeric quantum-walk simulator used
only to cross-check verdicts.
"""

from .decider import (
    Failure,
    PSTContext,
    PSTVerdict,
    decide_all,
    decide_pst,
    is_cospectral,
    is_strongly_cospectral,
    pole_multiplicity,
    recheck_failure,
)
from .matrix import IntSymMatrix, build_adjacency, build_laplacian, charpoly, charpoly_deleted
from .poly import IntPoly
from .quadfield import QuadNum
from .support import Eigenvalue, MinTime, SupportClassification, classify_support

__version__ = "0.1.0"

__all__ = [
    "Eigenvalue",
    "Failure",
    "IntPoly",
    "IntSymMatrix",
    "MinTime",
    "PSTContext",
    "PSTVerdict",
    "QuadNum",
    "SupportClassification",
    "build_adjacency",
    "build_laplacian",
    "charpoly",
    "charpoly_deleted",
    "classify_support",
    "decide_all",
    "decide_pst",
    "is_cospectral",
    "is_strongly_cospectral",
    "pole_multiplicity",
    "recheck_failure",
]
