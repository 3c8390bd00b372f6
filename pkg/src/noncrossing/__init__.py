"""Complexes of non-crossing diagonals of polygons and polygonal regions, in exact integer arithmetic."""

from .complex import Complex, build_complex, cut_along_diagonal, f_vector, link
from .homology import Classification, classify, reduced_homology
from .morse import run_morse
from .region import Region, enumerate_diagonals, mouths, select_mouth, validate

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "Complex",
    "Region",
    "build_complex",
    "classify",
    "cut_along_diagonal",
    "enumerate_diagonals",
    "f_vector",
    "link",
    "mouths",
    "reduced_homology",
    "run_morse",
    "select_mouth",
    "validate",
]
