"""Finite projective planes and their magic labelings over finite Abelian groups."""

from .geometry import Plane, build_plane, fano_plane, validate_axioms
from .groups import AbelianGroup, Labeling, verify
from .magic import magic_labeling, product_magic, v_line

__all__ = [
    "AbelianGroup",
    "Labeling",
    "Plane",
    "build_plane",
    "fano_plane",
    "magic_labeling",
    "product_magic",
    "v_line",
    "validate_axioms",
    "verify",
]
__version__ = "0.1.0"
