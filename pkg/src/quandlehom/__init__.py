"""Homology of finite quandles, degenerate and non-degenerate complexes, and virtual knot colorings."""

from .chains import Kind, basis, boundary
from .errors import QuandleError
from .homology import AbelianGroup, cohomology, homology, vanishing_index
from .quandles import (
    FiniteQuandle,
    load_quandle,
    make_alexander,
    make_dihedral,
    make_s3_conjugation,
    make_trivial,
    orbits,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "FiniteQuandle", "Kind", "QuandleError", "basis", "boundary", "cohomology",
    "homology", "load_quandle", "make_alexander", "make_dihedral", "make_s3_conjugation",
    "make_trivial", "orbits", "vanishing_index",
]
