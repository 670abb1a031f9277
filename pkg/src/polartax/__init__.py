"""Exact enumeration and classification of binary symplectic polar spaces.

Points of W(2N-1, 2) are N-qubit Pauli observables modulo phase, encoded as
``2N``-bit integers (Z-part in the high half, X-part in the low half).
"""
from .pauli import PauliError, decode, encode, parse_many
from .polar import GeometryError, IsotropicLine, PolarSpace, QuadraticForm, space
from .subspaces import SymplecticSubspace, linear_subspaces, quadratic_subspaces
from .doily import Doily, NotADoily
from .taxonomy import TaxonomyRecord, classify
from .conwell import ConwellHeptad, conwell_heptads, doily_heptad

__version__ = "0.1.0"

__all__ = [
    "ConwellHeptad",
    "Doily",
    "GeometryError",
    "IsotropicLine",
    "NotADoily",
    "PauliError",
    "PolarSpace",
    "QuadraticForm",
    "SymplecticSubspace",
    "TaxonomyRecord",
    "classify",
    "conwell_heptads",
    "decode",
    "doily_heptad",
    "encode",
    "linear_subspaces",
    "parse_many",
    "quadratic_subspaces",
    "space",
]
