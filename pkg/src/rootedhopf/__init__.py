"""Exact computations in the Connes-Kreimer Hopf algebra of rooted trees."""

from rootedhopf.errors import (
    DimensionMismatch,
    DomainError,
    NotCommutingError,
    ParseError,
    ResourceBoundError,
    RootedHopfError,
    SingularBasisError,
)
from rootedhopf.hopf import HElem, Tensor, antipode, coproduct, counit, graft_top
from rootedhopf.trees import EMPTY_FOREST, Forest, Tree, canonicalize, parse_forest, parse_tree

__version__ = "0.1.0"

__all__ = [
    "Tree",
    "Forest",
    "EMPTY_FOREST",
    "HElem",
    "Tensor",
    "canonicalize",
    "parse_tree",
    "parse_forest",
    "coproduct",
    "antipode",
    "counit",
    "graft_top",
    "RootedHopfError",
    "ParseError",
    "DomainError",
    "DimensionMismatch",
    "SingularBasisError",
    "NotCommutingError",
    "ResourceBoundError",
]
