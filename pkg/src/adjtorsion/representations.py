"""SL(2, C) representations of torus-knot and twist-knot groups.

Includes the adjoint lift to sl(2, C) in the ordered basis (E, H, F),
Chebyshev-type trace polynomials and the Riley polynomial of J(2, 2n).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.polynomial import Polynomial

from .rootfind import RootFindingError, polynomial_roots
from .words import KnotPresentation, Word, presentation_torus, presentation_twist, twist_word

SL2_TOL = 1e-9
ADJOINT_TOL = 1e-8
RELATION_TOL = 1e-8
RILEY_TOL = 1e-8

DEFAULT_CONJ_PARAM = 0.5 + 1j / 3

E = np.array([[0, 1], [0, 0]], dtype=complex)
H = np.array([[1, 0], [0, -1]], dtype=complex)
F = np.array([[0, 0], [1, 0]], dtype=complex)
SL2_BASIS = (E, H, F)


class RepresentationError(ValueError):
    """A proposed representation is invalid or degenerate."""


class RelationError(RepresentationError):
    pass


class RileyResidualError(RepresentationError):
    pass


def _check_sl2(g: np.ndarray) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise RepresentationError(f"expected a 2x2 matrix, got shape {g.shape}")
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if abs(det - 1) > SL2_TOL:
        raise RepresentationError(f"matrix is not unimodular (det = {det:.6g})")
    return g


def sl2_inverse(g: np.ndarray) -> np.ndarray:
    return np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]], dtype=complex)


def sl2_coordinates(x: np.ndarray) -> np.ndarray:
    """Coordinates of a traceless 2x2 matrix in the basis (E, H, F)."""
    return np.array([x[0, 1], x[0, 0], x[1, 0]], dtype=complex)


def adjoint(g: np.ndarray) -> np.ndarray:
    """Matrix of X -> g X g^-1 on sl(2, C) in the basis (E, H, F)."""
    g = _check_sl2(g)
    ginv = sl2_inverse(g)
    return np.column_stack([sl2_coordinates(g @ b @ ginv) for b in SL2_BASIS])


def killing_gram() -> np.ndarray:
    """Gram matrix of the trace form tr(XY) in the basis (E, H, F)."""
    return np.array([[np.trace(x @ y) for y in SL2_BASIS] for x in SL2_BASIS])


@dataclass(frozen=True, eq=False)
class Representation:
    """Images of the presentation generators in SL(2, C), with their adjoint lifts.

    Construction fails with ``RelationError`` unless every relator maps to
    the identity within ``relation_tol``.
    """

    presentation: KnotPresentation
    images: tuple[np.ndarray, ...]
    relation_tol: float = RELATION_TOL
    adjoint_images: tuple[np.ndarray, ...] = field(init=False)

    def __post_init__(self):
        if len(self.images) != self.presentation.generator_count:
            raise RepresentationError("one image per generator required")
        images = tuple(_check_sl2(g).copy() for g in self.images)
        for g in images:
            g.flags.writeable = False
        object.__setattr__(self, "images", images)
        adj = tuple(adjoint(g) for g in images)
        for a in adj:
            if abs(np.linalg.det(a) - 1) > ADJOINT_TOL:
                raise RepresentationError("adjoint image is not unimodular")
            a.flags.writeable = False
        object.__setattr__(self, "adjoint_images", adj)
        residual = self.relation_residual()
        if residual > self.relation_tol:
            raise RelationError(
                f"relators of {self.presentation.label or 'the presentation'} are not sent to I "
                f"(max residual {residual:.3e} > {self.relation_tol:.1e})"
            )

    def _product(self, word: Word, mats, inverses) -> np.ndarray:
        dim = mats[0].shape[0]
        out = np.eye(dim, dtype=complex)
        for gen, exp in word.letters:
            base = mats[gen] if exp > 0 else inverses[gen]
            out = out @ np.linalg.matrix_power(base, abs(exp))
        return out

    @cached_property
    def _inverse_images(self):
        return tuple(sl2_inverse(g) for g in self.images)

    @cached_property
    def _inverse_adjoint_images(self):
        return tuple(adjoint(g) for g in self._inverse_images)

    def holonomy(self, word: Word) -> np.ndarray:
        return self._product(word, self.images, self._inverse_images)

    def adjoint_holonomy(self, word: Word) -> np.ndarray:
        return self._product(word, self.adjoint_images, self._inverse_adjoint_images)

    def relation_residual(self) -> float:
        eye = np.eye(2)
        return max(float(np.abs(self.holonomy(r) - eye).max()) for r in self.presentation.relators)

    def conjugate(self, g: np.ndarray) -> "Representation":
        g = _check_sl2(g)
        gi = sl2_inverse(g)
        return Representation(self.presentation, tuple(g @ m @ gi for m in self.images), self.relation_tol)


def holonomy(rep: Representation, word: Word) -> np.ndarray:
    return rep.holonomy(word)


def adjoint_holonomy(rep: Representation, word: Word) -> np.ndarray:
    return rep.adjoint_holonomy(word)


# torus knots


def bezout_pair(p: int, q: int) -> tuple[int, int]:
    """Natural numbers (r, s) with p s - q r = 1 and 0 <= s < q minimal."""
    s = pow(p, -1, q)
    r = (p * s - 1) // q
    return r, s


def torus_components(p: int, q: int) -> list[tuple[int, int]]:
    """Pairs (k, l) with 0 < k < p, 0 < l < q, k = l mod 2."""
    return [(k, l) for k in range(1, p) for l in range(1, q) if (k - l) % 2 == 0]


@dataclass(frozen=True)
class TorusRepParams:
    p: int
    q: int
    k: int
    l: int
    conj_param: complex = DEFAULT_CONJ_PARAM

    def __post_init__(self):
        if self.p < 2 or self.q < 2 or math.gcd(self.p, self.q) != 1:
            raise ValueError(f"(p, q) = ({self.p}, {self.q}) is not a torus knot")
        if not (0 < self.k < self.p and 0 < self.l < self.q) or (self.k - self.l) % 2:
            raise ValueError(
                f"(k, l) = ({self.k}, {self.l}) violates 0 < k < p, 0 < l < q, k = l mod 2"
            )

    @property
    def bezout_r(self) -> int:
        return bezout_pair(self.p, self.q)[0]

    @property
    def bezout_s(self) -> int:
        return bezout_pair(self.p, self.q)[1]

    @property
    def alpha(self) -> complex:
        return cmath.exp(1j * math.pi * self.k / self.p)

    @property
    def beta(self) -> complex:
        return cmath.exp(1j * math.pi * self.l / self.q)

    def meridian(self) -> Word:
        """mu = c^-r d^s."""
        return Word(((0, -self.bezout_r), (1, self.bezout_s)))

    def reducible_traces(self) -> tuple[float, float]:
        """The two values of tr rho(mu) excluded on an irreducible component."""
        r, s = self.bezout_r, self.bezout_s
        a = r * self.k / self.p
        b = s * self.l / self.q
        return 2 * math.cos(math.pi * (a + b)), 2 * math.cos(math.pi * (a - b))


def build_torus_rep(params: TorusRepParams) -> Representation:
    """rho(c) = diag(alpha, 1/alpha), rho(d) = V diag(beta, 1/beta) V^-1 with V = [[1, 1], [v, 1]]."""
    v = complex(params.conj_param)
    if abs(v) < 1e-12 or abs(v - 1) < 1e-12:
        raise RepresentationError(f"conjugation parameter v = {v} is degenerate (v must avoid 0 and 1)")
    a, b = params.alpha, params.beta
    rho_c = np.diag([a, 1 / a])
    V = np.array([[1, 1], [v, 1]], dtype=complex)
    rho_d = V @ np.diag([b, 1 / b]) @ np.linalg.inv(V)
    # V has det 1 - v, so rho_d is only unimodular up to roundoff
    rep = Representation(presentation_torus(params.p, params.q), (rho_c, rho_d), relation_tol=1e-10)
    tr_mu = np.trace(rep.holonomy(params.meridian()))
    for bad in params.reducible_traces():
        if abs(tr_mu - bad) <= 1e-8:
            raise RepresentationError(
                f"tr rho(mu) = {tr_mu:.10g} hits the reducible value {bad:.10g}; choose another v"
            )
    return rep


def meridian_trace(rep: Representation, params: TorusRepParams) -> complex:
    return complex(np.trace(rep.holonomy(params.meridian())))


# twist knots


def chebyshev_s(k: int, gamma):
    """S_k(gamma): S_0 = 1, S_1 = gamma, S_{k+1} = gamma S_k - S_{k-1}, S_{-k} = -S_{k-2}.

    Works for scalars and for ``numpy.polynomial.Polynomial`` arguments.
    """
    if k < 0:
        return -chebyshev_s(-k - 2, gamma) if k < -1 else gamma * 0
    prev, cur = gamma * 0, gamma**0
    for _ in range(k):
        prev, cur = cur, gamma * cur - prev
    return cur


def chebyshev_pair(n: int, gamma):
    """(X, Y) = (S_{n-1}(gamma), S_{n-2}(gamma))."""
    return chebyshev_s(n - 1, gamma), chebyshev_s(n - 2, gamma)


def trace_w(s: complex, u: complex) -> complex:
    """gamma = tr rho(w) = 2 + 2u - u/s - s u + u^2."""
    return 2 + 2 * u - u / s - s * u + u * u


def riley_polynomial(n: int, s: complex) -> Polynomial:
    """phi(s, u) = (s + 1/s - 1 - u) X(gamma(u)) - Y(gamma(u)) as a polynomial in u."""
    if n == 0:
        raise ValueError("n must be nonzero")
    s = complex(s)
    if s == 0:
        raise ValueError("s must be nonzero")
    gamma = Polynomial([2, 2 - 1 / s - s, 1])
    X, Y = chebyshev_pair(n, gamma)
    kappa = Polynomial([s + 1 / s - 1, -1])
    return (kappa * X - Y).trim()


def riley_value(n: int, s: complex, u: complex) -> complex:
    X, Y = chebyshev_pair(n, trace_w(s, u))
    return (s + 1 / s - 1 - u) * X - Y


@dataclass(frozen=True)
class RileyRoot:
    u: complex
    residual: float
    repeated: bool = False


def riley_roots(n: int, s: complex, repeat_tol: float = 1e-6) -> list[RileyRoot]:
    """All roots of the Riley polynomial in u, sorted by (real, imag)."""
    phi = riley_polynomial(n, s)
    coeffs = phi.coef[::-1]
    roots = polynomial_roots(coeffs)
    scale = float(np.abs(phi.coef).max())
    resid = np.abs(phi(roots))
    if np.any(resid > 1e-10 * scale):
        worst = float(resid.max() / scale)
        raise RootFindingError(f"Riley roots for n={n}, s={s} have relative residual {worst:.2e}")
    order = np.lexsort((np.round(roots.imag, 12), np.round(roots.real, 12)))
    roots, resid = roots[order], resid[order]
    out = []
    for i, u in enumerate(roots):
        others = np.delete(roots, i)
        rep = bool(others.size and np.abs(others - u).min() < repeat_tol)
        out.append(RileyRoot(complex(u), float(resid[i]), rep))
    return out


@dataclass(frozen=True)
class TwistRepParams:
    """Riley parameters (s, u) of a non-abelian representation of J(2, 2n)."""

    n: int
    riley_s: complex
    u: complex

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("n must be nonzero")
        if self.riley_s == 0:
            raise ValueError("s must be nonzero")
        object.__setattr__(self, "riley_s", complex(self.riley_s))
        object.__setattr__(self, "u", complex(self.u))

    @property
    def gamma(self) -> complex:
        return trace_w(self.riley_s, self.u)

    @property
    def x2(self) -> complex:
        """x^2 = (tr rho(a))^2 = s + 1/s + 2."""
        return self.riley_s + 1 / self.riley_s + 2

    @property
    def y(self) -> complex:
        """tr rho(a b^-1) = u + 2."""
        return self.u + 2

    @property
    def kappa(self) -> complex:
        return self.riley_s + 1 / self.riley_s - 1 - self.u

    @property
    def XY(self) -> tuple[complex, complex]:
        return chebyshev_pair(self.n, self.gamma)

    def riley_residual(self) -> float:
        return abs(riley_value(self.n, self.riley_s, self.u))


def twist_images(s: complex, u: complex) -> tuple[np.ndarray, np.ndarray]:
    rs = cmath.sqrt(s)
    rho_a = np.array([[rs, 1 / rs], [0, 1 / rs]], dtype=complex)
    rho_b = np.array([[rs, 0], [-rs * u, 1 / rs]], dtype=complex)
    return rho_a, rho_b


def build_twist_rep(params: TwistRepParams, riley_tol: float = RILEY_TOL) -> Representation:
    """Riley's normal form; the relation is checked before the Riley residual."""
    images = twist_images(params.riley_s, params.u)
    rep = Representation(presentation_twist(params.n), images)
    residual = params.riley_residual()
    if residual > riley_tol:
        raise RileyResidualError(f"|phi(s, u)| = {residual:.3e} exceeds {riley_tol:.1e}")
    return rep


def twist_w_holonomy(rep: Representation) -> np.ndarray:
    return rep.holonomy(twist_word())
