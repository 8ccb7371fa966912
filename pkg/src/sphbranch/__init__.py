"""Branching multiplicities for the spherical pairs of minimal rank.

Multiplicity spaces are computed as kernels of powers of root operators on
a weight space of an explicit module, and checked against branching by
characters.
"""

from .chars import decompose_virtual_character, freudenthal_character, weyl_dim
from .linalg import KERNELS
from .mult import MultiplicityWitness, prv_spaces, theorem1_multiplicity, verify_full_D_redundancy
from .oracle import branch_decompose, oracle_multiplicity
from .orbits import divisor_set, enumerate_cosets, find_y0, orbit_graph, stabilizer_dim
from .pairs import SphericalPair, make_pair
from .weyl import RootSystem, WeylElement, build_root_system

__version__ = "0.1.0"

__all__ = [
    "KERNELS",
    "MultiplicityWitness",
    "RootSystem",
    "SphericalPair",
    "WeylElement",
    "branch_decompose",
    "build_root_system",
    "decompose_virtual_character",
    "divisor_set",
    "enumerate_cosets",
    "find_y0",
    "freudenthal_character",
    "make_pair",
    "oracle_multiplicity",
    "orbit_graph",
    "prv_spaces",
    "stabilizer_dim",
    "theorem1_multiplicity",
    "verify_full_D_redundancy",
    "weyl_dim",
]
