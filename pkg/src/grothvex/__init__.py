"""Supports of Grothendieck polynomials of vexillary permutations: bumpless
pipe dreams, bubbling diagrams, Schubitopes and Schubert matroid ranks."""

from .core import Diagram, Permutation, is_vexillary, rothe_diagram
from .poly import MultiPoly, grothendieck, schubert

__all__ = [
    "Diagram",
    "MultiPoly",
    "Permutation",
    "grothendieck",
    "is_vexillary",
    "rothe_diagram",
    "schubert",
]

__version__ = "0.1.0"
