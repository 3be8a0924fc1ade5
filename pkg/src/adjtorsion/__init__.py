"""Twisted Alexander polynomial with the adjoint action and non-abelian
Reidemeister torsion for torus and twist knots."""

from .laurent import LaurentPoly, RationalFunction, divide_out_t_minus_1, rational_equal_up_to_unit
from .polymatrix import PolyMatrix, block_assemble, matrix_det, remove_block_column
from .representations import (
    Representation,
    RepresentationError,
    TorusRepParams,
    TwistRepParams,
    adjoint,
    build_torus_rep,
    build_twist_rep,
    chebyshev_pair,
    riley_polynomial,
    riley_roots,
)
from .wada import TorsionUndefinedError, alexander_matrix, phi, torsion_limit, twisted_alexander
from .words import GroupRingElement, KnotPresentation, Word, fox_derivative, presentation_torus, presentation_twist

__version__ = "0.1.0"
