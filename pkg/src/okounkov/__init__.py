"""Exact lattice-point counting for graded families of monomial ideals.

Colengths, multiplicities and limits of normalized colength sequences,
computed through semigroups in Z^d x N and the volumes of their bodies.
"""

__version__ = "0.1.0"

from .exactmath import Lattice, Polytope, convex_hull, lattice_index, volume
from .monomial import MonomialIdeal, PairIdeal, length, multiplicity_covolume
from .semigroup import GeneratedSemigroup, SemigroupStack, TabulatedSemigroup, kk_limit, structure
from .valuation import MonomialValuation, gamma_semigroups, length_via_semigroups
from .families import GradedFamily, length_sequence

__all__ = [
    "GeneratedSemigroup",
    "GradedFamily",
    "Lattice",
    "MonomialIdeal",
    "MonomialValuation",
    "PairIdeal",
    "Polytope",
    "SemigroupStack",
    "TabulatedSemigroup",
    "convex_hull",
    "gamma_semigroups",
    "kk_limit",
    "lattice_index",
    "length",
    "length_sequence",
    "length_via_semigroups",
    "multiplicity_covolume",
    "structure",
    "volume",
]
