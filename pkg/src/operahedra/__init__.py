"""Operahedron lattices of rooted plane trees."""

from .errors import NotALatticeError, NotAdjacentError, SizeLimitError, TheoremViolation, TreeParseError
from .lattice import FinitePoset
from .nestings import enumerate_maximal_nestings, flip, mn_poset
from .theta import MoveKind, ThetaPair, enumerate_theta, psi, psi_inverse
from .trees import PlaneTree, broom, chain, claw, enumerate_trees, parse_tree, render_tree

__all__ = [
    "FinitePoset",
    "MoveKind",
    "NotALatticeError",
    "NotAdjacentError",
    "PlaneTree",
    "SizeLimitError",
    "TheoremViolation",
    "ThetaPair",
    "TreeParseError",
    "broom",
    "chain",
    "claw",
    "enumerate_maximal_nestings",
    "enumerate_theta",
    "enumerate_trees",
    "flip",
    "mn_poset",
    "parse_tree",
    "psi",
    "psi_inverse",
    "render_tree",
]
