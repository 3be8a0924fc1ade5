"""Simultaneous root finding for complex polynomials."""

from __future__ import annotations

import logging

import numpy as np

log = logging.getLogger(__name__)


class RootFindingError(RuntimeError):
    pass


def _initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    # coeffs highest degree first; circle radius from the Cauchy-type bound
    n = len(coeffs) - 1
    lead = coeffs[0]
    radius = max(np.abs(coeffs[1:] / lead) ** (1.0 / np.arange(1, n + 1)))
    radius = max(radius, 1e-3)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * angles)


def aberth(coeffs, max_iter: int = 200, tol: float = 1e-14) -> tuple[np.ndarray, bool]:
    """Aberth-Ehrlich iteration.

    ``coeffs`` are highest degree first.  Returns ``(roots, converged)``.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = len(c) - 1
    if n < 1:
        return np.array([], dtype=complex), True
    dc = np.polyder(c)
    z = _initial_guesses(c)
    for _ in range(max_iter):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
        step = np.where(pz == 0, 0, step)
        if not np.all(np.isfinite(step)):
            return z, False
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))):
            return z, True
    return z, False


def _newton_polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    dc = np.polyder(c)
    for _ in range(steps):
        d = np.polyval(dc, z)
        ok = d != 0
        z = np.where(ok, z - np.polyval(c, z) / np.where(ok, d, 1), z)
    return z


def polynomial_roots(coeffs, max_iter: int = 200) -> np.ndarray:
    """All complex roots with multiplicity, highest-degree-first ``coeffs``.

    Aberth-Ehrlich first; if it stalls, companion-matrix eigenvalues
    polished by a few Newton steps.
    """
    c = np.asarray(coeffs, dtype=complex)
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise ValueError("the zero polynomial has no finite root set")
    c = c[nz[0] :]
    roots, converged = aberth(c, max_iter=max_iter)
    if converged:
        return roots
    log.debug("Aberth iteration did not converge for degree %d; using companion matrix", len(c) - 1)
    roots = _newton_polish(c, np.roots(c))
    if not np.all(np.isfinite(roots)):
        raise RootFindingError("root finding failed to converge")
    return roots
