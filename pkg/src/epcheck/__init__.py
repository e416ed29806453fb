"""epcheck: exact verification of alcove combinatorics and convolution
identities in finite reductive groups.

Everything is computed in exact arithmetic (rationals and cyclotomic
integers); the CLI (`epcheck`) drives the verification suites and writes
deterministic JSON/CSV/SVG reports.
"""

__version__ = "0.1.0"

from .apartment import Apartment, Chamber, Facet
from .groups import FiniteGroup, build_group
from .roots import AffineRoot, CartanType, RootSystem, build_root_system

__all__ = [
    "AffineRoot",
    "Apartment",
    "CartanType",
    "Chamber",
    "Facet",
    "FiniteGroup",
    "RootSystem",
    "build_group",
    "build_root_system",
    "__version__",
]
