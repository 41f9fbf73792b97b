"""Exact graded extensions of sl_n by exterior powers."""

from .algebra import (
    AdMatrix,
    AlgebraElement,
    AxiomReport,
    BlockRankTable,
    ExtensionAlgebra,
    block_ranks,
    build_algebra,
    contraction_scale,
    verify_axioms,
)
from .exterior import (
    ExteriorElement,
    coordinates,
    hodge_star,
    monomial_basis,
    pairing,
    partial,
    wedge,
)
from .rational import (
    NoSolution,
    RatMatrix,
    RatPolynomial,
    block,
    char_poly,
    count_real_roots,
    is_squarefree,
    mat_rank,
    mat_solve,
    matrix_commutator,
    min_poly,
)
from .sl import TracelessMatrix, act, from_coordinates, make_traceless, sl_basis, sl_coordinates

__version__ = "0.1.0"
