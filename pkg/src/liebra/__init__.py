"""Bases, normal forms and pairings for free algebras with two compatible Lie brackets."""

__version__ = "0.1.0"

from .combinatorics import (
    BLUE,
    RED,
    Color,
    ColoredGraph,
    OrientedGraph,
    colored_trees_on,
    enumerate_colored_trees,
    format_edges,
)
from .eil import eil_basis, eil_normalize
from .errors import (
    DomainError,
    EmptyAlphabetError,
    InternalInvariantError,
    LiebraError,
    MonomialSyntaxError,
    MultilinearityError,
    PatternViolationError,
)
from .lincombo import LinCombo
from .monomials import (
    basis_monomial,
    blue,
    graphical_root,
    is_basis_monomial,
    parse_monomial,
    print_monomial,
    red,
    tree_of_monomial,
)
from .orders import Verdict, ind_compare, linear_extension
from .pairing import pair, pairing_matrix
from .poisson import com_matrix, parse_poisson, poisson_basis, poisson_normalize, pair_com
from .rewrite import lc_normalize

__all__ = [name for name in dir() if not name.startswith("_")]
