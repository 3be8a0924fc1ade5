"""Explicit formulas for torus and twist knots, evaluated in floating point.

These are the independent route checked against the Fox-calculus pipeline
in :mod:`adjtorsion.wada`.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .laurent import LaurentPoly, RationalFunction
from .representations import (
    Representation,
    TorusRepParams,
    chebyshev_pair,
    trace_w,
    twist_word,
)

SINGULAR_TOL = 1e-10


class SingularFormulaError(ValueError):
    """The closed formula has a vanishing denominator at these parameters."""


def _binomial_poly(power: int, middle: complex, lead: int = 2) -> LaurentPoly:
    """t^(lead*power) - middle t^power + 1."""
    return LaurentPoly.from_dict({lead * power: 1.0, power: -middle, 0: 1.0})


def torus_delta_closed(p: int, q: int, k: int, l: int) -> RationalFunction:
    """(t^pq - 1)^3 / ((t^p-1)(t^q-1)(t^2q - 2cos(2pi k/p) t^q + 1)(t^2p - 2cos(2pi l/q) t^p + 1))."""
    TorusRepParams(p, q, k, l)
    one = LaurentPoly.constant(1.0)
    num = (LaurentPoly.monomial(p * q) - one) ** 3
    den = (
        (LaurentPoly.monomial(p) - one)
        * (LaurentPoly.monomial(q) - one)
        * _binomial_poly(q, 2 * math.cos(2 * math.pi * k / p))
        * _binomial_poly(p, 2 * math.cos(2 * math.pi * l / q))
    )
    return RationalFunction(num, den)


def torus_torsion_closed(p: int, q: int, k: int, l: int) -> float:
    TorusRepParams(p, q, k, l)
    return -(p * p * q * q) / (16 * math.sin(math.pi * k / p) ** 2 * math.sin(math.pi * l / q) ** 2)


def twist_denominators(x2: complex, y: complex) -> tuple[complex, complex, complex]:
    """(y + 2 - x^2, y^2 - y x^2 + x^2, y^2 - y x^2 + 2 x^2)."""
    return y + 2 - x2, y * y - y * x2 + x2, y * y - y * x2 + 2 * x2


def twist_singular(x2: complex, y: complex, tol: float = SINGULAR_TOL) -> bool:
    return min(abs(d) for d in twist_denominators(x2, y)) <= tol


def _twist_parts(n: int, x2: complex, y: complex) -> tuple[complex, complex]:
    d1, d2, d3 = twist_denominators(x2, y)
    if min(abs(d1), abs(d2), abs(d3)) <= SINGULAR_TOL:
        raise SingularFormulaError("formula singular at this representation")
    prefactor = 1 / (d1 * d2)
    middle = ((2 * n - 1) * y * y + y * x2 - 2 * n * x2 * (x2 - 2)) / d3
    return prefactor, middle


def twist_delta_closed(n: int, x2: complex, y: complex) -> RationalFunction:
    """(t - 1)(n t^2 + middle t + n) / ((y+2-x^2)(y^2-yx^2+x^2)), scalar folded into the numerator."""
    prefactor, middle = _twist_parts(n, complex(x2), complex(y))
    cubic = LaurentPoly([-n, n - middle, middle - n, n])  # (t - 1)(n t^2 + middle t + n)
    return RationalFunction(cubic.scale(prefactor), LaurentPoly.constant(1.0))


def twist_torsion_closed(n: int, x2: complex, y: complex) -> complex:
    prefactor, middle = _twist_parts(n, complex(x2), complex(y))
    return -prefactor * (middle + 2 * n)


def omega_direct(n: int, rep: Representation) -> np.ndarray:
    """I + W^-1 + ... + W^-(n-1) for n >= 1, W = Ad rho(w).

    For n <= 0 the same geometric sum continued to negative length,
    -(W + W^2 + ... + W^|n|), which is what the Fox derivative of w^n
    produces.
    """
    W = rep.adjoint_holonomy(twist_word())
    if n >= 1:
        Winv = np.linalg.inv(W)
        out, power = np.zeros((3, 3), dtype=complex), np.eye(3, dtype=complex)
        for _ in range(n):
            out += power
            power = power @ Winv
        return out
    out, power = np.zeros((3, 3), dtype=complex), np.eye(3, dtype=complex)
    for _ in range(-n):
        power = power @ W
        out -= power
    return out


def lemma_x_squared(s: complex, u: complex) -> complex:
    """X^2 = 1 / (1 - kappa gamma + kappa^2), kappa = s + 1/s - 1 - u, valid on the Riley locus."""
    kappa = s + 1 / s - 1 - u
    den = 1 - kappa * trace_w(s, u) + kappa * kappa
    if abs(den) <= SINGULAR_TOL:
        raise SingularFormulaError("X^2 formula singular at this (s, u)")
    return 1 / den


def omega_prefactor(s: complex, u: complex) -> complex:
    return s * s * u * (1 - 2 * s + s * s - s * u) * (-4 * s + u - 2 * s * u + s * s * u - s * u * u)


def omega_closed(n: int, s: complex, u: complex) -> np.ndarray:
    """Omega from its nine entries, with X^2 taken from the Riley-locus identity."""
    s, u = complex(s), complex(u)
    den = omega_prefactor(s, u)
    if abs(den) <= SINGULAR_TOL:
        raise SingularFormulaError("Omega prefactor vanishes at this (s, u)")
    X2 = lemma_x_squared(s, u)
    r1 = 1 - 2 * s + s**2 - s * u
    r2 = -1 + s + s * u
    r3 = -1 + 2 * s + s**2 + s * u
    f_a = -1 - 3 * s**2 + 2 * s * u - s**2 * u + s**3 * u - s**2 * u**2
    f_b = -2 * s + u - s * u + s**2 * u - s * u**2
    f_c = -3 * s + s**2 + u - 2 * s * u + s**2 * u - s * u**2

    w11 = s**2 * u * (
        r1
        * (
            2 - 4 * s + 2 * s**2 + u - 6 * s * u + s**2 * u - 4 * s**3 * u
            - s * u**2 + 3 * s**2 * u**2 - s**3 * u**2 + s**4 * u**2 - s**3 * u**3
        )
        * X2
        - 2 * n * s * r2**2
    )
    w12 = -2 * s * u * r2 * (r1 * f_a * X2 - n * s * r3)
    w13 = -(r2**2) * (r1 * f_b * X2 - 2 * n * s**2)
    w21 = s**2 * u**2 * r2 * (r1 * f_a * X2 - n * s * r3)
    w22 = -s * u * (2 * r1 * r2**2 * f_b * X2 - n * s * u * r3**2)
    w23 = -u * r2 * (r1 * r2 * f_c * X2 - n * s**2 * r3)
    w31 = -(s**2) * u**2 * r2**2 * (r1 * f_b * X2 - 2 * n * s**2)
    w32 = 2 * s * u**2 * r2 * (r1 * r2 * f_c * X2 - n * s**2 * r3)
    w33 = u * r2 * (
        r1
        * (
            -2 * s**2 + 2 * s**3 + 4 * s * u - 9 * s**2 * u + 3 * s**3 * u
            - u**2 + 4 * s * u**2 - 9 * s**2 * u**2 + 3 * s**3 * u**2
            + 2 * s * u**3 - 4 * s**2 * u**3 + s**3 * u**3 - s**2 * u**4
        )
        * X2
        - 2 * n * s**3 * r2
    )
    return np.array([[w11, w12, w13], [w21, w22, w23], [w31, w32, w33]], dtype=complex) / den


def w_eigen_data(s: complex, u: complex) -> tuple[complex, complex, complex, complex]:
    """(xi_+, xi_-, alpha, beta) with xi_+- the eigenvalues of rho(w) and alpha = 1 - su - xi_+, beta = 1 - su - xi_-."""
    gamma = trace_w(s, u)
    disc = cmath.sqrt(gamma * gamma - 4)
    xp, xm = (gamma + disc) / 2, (gamma - disc) / 2
    return xp, xm, 1 - s * u - xp, 1 - s * u - xm


def d_values_eigen(n: int, s: complex, u: complex) -> np.ndarray:
    xp, xm, a, b = w_eigen_data(s, u)
    ep, em = xp ** (n - 1), xm ** (n - 1)
    return np.array([em + ep, a * em + b * ep, a * ep + b * em, a * a * em + b * b * ep, a * a * ep + b * b * em])


def d_values_chebyshev(n: int, s: complex, u: complex) -> np.ndarray:
    gamma = trace_w(s, u)
    X, Y = chebyshev_pair(n, gamma)
    h = 1 - s * u
    g2 = gamma * gamma - 2
    d1 = 2 * X - gamma * Y
    d2 = h * d1 - gamma * X + g2 * Y
    d3 = h * d1 - gamma * X + 2 * Y
    d4 = h * h * d1 - 2 * h * (gamma * X - g2 * Y) + g2 * X - gamma * (gamma * gamma - 3) * Y
    d5 = h * h * d1 - 2 * h * (gamma * X - 2 * Y) + g2 * X - gamma * Y
    return np.array([d1, d2, d3, d4, d5])


def lemma_d_residual(n: int, s: complex, u: complex, repeat_tol: float = 1e-6) -> float:
    """max_i |d_i from eigenvalues of rho(w) - d_i from (X, Y)|, relative to max(1, |d_i|)."""
    xp, xm, _, _ = w_eigen_data(s, u)
    if abs(xp - xm) <= repeat_tol:
        raise SingularFormulaError("rho(w) has a repeated eigenvalue (gamma = +-2)")
    eig = d_values_eigen(n, s, u)
    cheb = d_values_chebyshev(n, s, u)
    return float(np.max(np.abs(eig - cheb) / np.maximum(1.0, np.abs(eig))))


def lemma_x_residual(n: int, s: complex, u: complex) -> float:
    """|X^2 - 1/(1 - kappa gamma + kappa^2)|; meaningful only on the Riley locus."""
    X, _ = chebyshev_pair(n, trace_w(s, u))
    return abs(X * X - lemma_x_squared(s, u))


def chebyshev_invariant_residual(n: int, gamma: complex) -> float:
    """|X^2 - gamma X Y + Y^2 - 1| over the size of the largest term (at least 1)."""
    X, Y = chebyshev_pair(n, gamma)
    terms = (X * X, gamma * X * Y, Y * Y)
    scale = max(1.0, *(abs(t) for t in terms))
    return abs(terms[0] - terms[1] + terms[2] - 1) / scale


def omega_eigen(n: int, s: complex, u: complex) -> np.ndarray:
    """P diag(xi_-^(n-1) X, n, xi_+^(n-1) X) P^-1 with P = Ad of the diagonalizing matrix Q."""
    xp, xm, a, b = w_eigen_data(s, u)
    delta = u + 1 - 1 / s
    if abs(delta) <= SINGULAR_TOL or abs(a - b) <= SINGULAR_TOL:
        raise SingularFormulaError("rho(w) is not diagonalized by Q at this (s, u)")
    P = np.array(
        [
            [-delta, 2 * delta, delta],
            [a, -(a + b), -b],
            [a * a / delta, -2 * a * b / delta, -b * b / delta],
        ]
    ) / (a - b)
    X, _ = chebyshev_pair(n, trace_w(s, u))
    return P @ np.diag([xm ** (n - 1) * X, n, xp ** (n - 1) * X]) @ np.linalg.inv(P)
