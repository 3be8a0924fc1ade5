"""Twisted Alexander polynomial of Ad o rho via Fox calculus, and the torsion limit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .laurent import EPS_ROOT, LaurentPoly, RationalFunction, order_at_one
from .polymatrix import PolyMatrix, block_assemble, matrix_det, remove_block_column
from .representations import Representation
from .words import GroupRingElement, Word, fox_derivative

ADJ_DIM = 3


class TorsionUndefinedError(ValueError):
    """Delta does not have a simple zero at t = 1."""


def phi(element: GroupRingElement | Word, rep: Representation) -> PolyMatrix:
    """Image of a group-ring element under (Ad o rho) tensor abelianization."""
    if isinstance(element, Word):
        element = GroupRingElement.of(element)
    pres = rep.presentation
    terms: dict[int, np.ndarray] = {}
    for word, c in element.items():
        k = pres.degree(word)
        terms[k] = terms.get(k, 0) + c * rep.adjoint_holonomy(word)
    return PolyMatrix.from_terms(terms, (ADJ_DIM, ADJ_DIM))


def alexander_matrix(rep: Representation) -> list[list[PolyMatrix]]:
    """Grid of 3x3 blocks Phi(d r_i / d a_j)."""
    pres = rep.presentation
    return [
        [phi(fox_derivative(r, j), rep) for j in range(pres.generator_count)]
        for r in pres.relators
    ]


def denominator_det(rep: Representation, j: int) -> LaurentPoly:
    """det Phi(1 - a_j) for the 1-based generator index j."""
    gen = GroupRingElement.one() - Word.generator(j - 1)
    return matrix_det(phi(gen, rep))


def default_column(rep: Representation) -> int:
    """Generator whose det Phi(1 - a_j) has the largest leading coefficient."""
    best, best_mag = 1, -1.0
    for j in range(1, rep.presentation.generator_count + 1):
        mag = abs(denominator_det(rep, j).leading())
        if mag > best_mag * (1 + 1e-12):
            best, best_mag = j, mag
    return best


@dataclass(frozen=True)
class TwistedAlexander:
    """Delta together with how it was produced.

    ``delta`` equals ``column_sign * det M_j / det Phi(1 - a_j)``.  The sign
    (-1)^(3(j+1)) makes the representative independent of the removed
    column j; for j = 1 it is Wada's quotient unchanged.
    """

    delta: RationalFunction
    column: int
    column_sign: int
    numerator_degrees: tuple[int, int]
    denominator_degrees: tuple[int, int]


def twisted_alexander(rep: Representation, column: int | None = None) -> TwistedAlexander:
    pres = rep.presentation
    ell = pres.generator_count
    j = default_column(rep) if column is None else column
    if not 1 <= j <= ell:
        raise ValueError(f"column must be in 1..{ell}, got {j}")
    den = denominator_det(rep, j)
    if den.is_zero():
        raise ZeroDivisionError(f"det Phi(1 - a_{j}) vanishes identically; choose a different column")
    m = block_assemble(alexander_matrix(rep))
    num = matrix_det(remove_block_column(m, j, ADJ_DIM))
    sign = (-1) ** (ADJ_DIM * (j + 1))
    num_sign = num.scale(sign)
    return TwistedAlexander(
        delta=RationalFunction(num_sign, den),
        column=j,
        column_sign=sign,
        numerator_degrees=(num.min_degree, num.max_degree) if not num.is_zero() else (0, 0),
        denominator_degrees=(den.min_degree, den.max_degree),
    )


@dataclass(frozen=True)
class TorsionValue:
    """-lim_{t->1} Delta(t)/(t - 1) with the zero orders found at t = 1.

    ``regular`` is the operational stand-in for longitude-regularity: Delta
    has a simple zero at t = 1.  Only the sign of the representative is
    ambiguous; powers of t do not affect the limit.
    """

    value: complex
    regular: bool
    numerator_order: int
    denominator_order: int

    @property
    def net_order(self) -> int:
        return self.numerator_order - self.denominator_order


def torsion_limit(delta: RationalFunction | TwistedAlexander, eps: float = EPS_ROOT) -> TorsionValue:
    """Cancel the (t - 1) factors of numerator and denominator, then evaluate at 1."""
    if isinstance(delta, TwistedAlexander):
        delta = delta.delta
    if delta.numerator.is_zero():
        raise TorsionUndefinedError("Delta is identically zero")
    m_num, num = order_at_one(delta.numerator, eps)
    m_den, den = order_at_one(delta.denominator, eps)
    if m_num - m_den != 1:
        raise TorsionUndefinedError(
            f"torsion limit undefined (representation not regular in the operational sense): "
            f"Delta vanishes to order {m_num - m_den} at t = 1"
        )
    value = -complex(num(1.0)) / complex(den(1.0))
    return TorsionValue(value, True, m_num, m_den)


def fundamental_identity_residual(rep: Representation) -> float:
    """max over relators of ||sum_j Phi(dr/da_j) Phi(a_j - 1)|| relative to the block sizes."""
    pres = rep.presentation
    worst = 0.0
    for r in pres.relators:
        total = None
        scale = 0.0
        for j in range(pres.generator_count):
            block = phi(fox_derivative(r, j), rep) @ phi(GroupRingElement.of(Word.generator(j)) - 1, rep)
            scale = max(scale, float(np.abs(block.coeffs).max(initial=0.0)))
            total = block if total is None else total + block
        worst = max(worst, float(np.abs(total.coeffs).max(initial=0.0)) / max(scale, 1.0))
    return worst
