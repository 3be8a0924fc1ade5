"""Parameter-grid comparisons between the Fox-calculus pipeline and the closed forms.

Each suite returns a list of :class:`CheckRow` in a fixed order (sorted by
parameters), so output is reproducible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import closed_forms as cf
from .laurent import rational_equal_up_to_unit
from .polymatrix import PolyMatrix, matrix_det
from .representations import (
    DEFAULT_CONJ_PARAM,
    RepresentationError,
    Representation,
    TorusRepParams,
    TwistRepParams,
    build_torus_rep,
    build_twist_rep,
    riley_roots,
    torus_components,
)
from .wada import TorsionUndefinedError, fundamental_identity_residual, torsion_limit, twisted_alexander
from .words import GroupRingElement, Word, fox_derivative, presentation_torus

DEFAULT_TOL = 1e-8

TORUS_KNOTS = ((2, 3), (2, 5), (2, 7), (3, 4), (3, 5))
TORUS_CONJ_PARAMS = (DEFAULT_CONJ_PARAM, 2.0 - 1.0j, -0.7 + 0.4j)
TWIST_NS = (1, 2, 3, -1, -2)
TWIST_SS = (2.0 + 0j, 1.0 + 0j, cmath.exp(1j * math.pi / 5))
OMEGA_NS = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class CheckRow:
    suite: str
    label: str
    residual: float
    tol: float
    status: str  # "pass", "fail" or "skip"
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"


def _row(suite, label, residual, tol, note="") -> CheckRow:
    ok = residual <= tol and math.isfinite(residual)
    return CheckRow(suite, label, float(residual), tol, "pass" if ok else "fail", note)


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _perturbed_torus_rep(params: TorusRepParams, eps: float) -> Representation:
    a = params.alpha * cmath.exp(1j * eps)
    b = params.beta
    v = complex(params.conj_param)
    V = np.array([[1, 1], [v, 1]], dtype=complex)
    rho_d = V @ np.diag([b, 1 / b]) @ np.linalg.inv(V)
    return Representation(presentation_torus(params.p, params.q), (np.diag([a, 1 / a]), rho_d), relation_tol=1e-10)


def torus_suite(
    knots: Iterable[tuple[int, int]] = TORUS_KNOTS,
    conj_params: Iterable[complex] = TORUS_CONJ_PARAMS,
    delta_tol: float = DEFAULT_TOL,
    torsion_rtol: float = DEFAULT_TOL,
    perturb: float = 0.0,
) -> list[CheckRow]:
    """Pipeline Delta and torsion against the torus-knot closed forms."""
    rows = []
    for p, q in sorted(knots):
        for k, l in torus_components(p, q):
            for v in conj_params:
                params = TorusRepParams(p, q, k, l, v)
                label = f"T({p},{q}) k={k} l={l} v={complex(v):.4g}"
                try:
                    rep = _perturbed_torus_rep(params, perturb) if perturb else build_torus_rep(params)
                except RepresentationError as exc:
                    rows.append(CheckRow("torus", label, math.inf, delta_tol, "fail", f"rejected: {exc}"))
                    continue
                ta = twisted_alexander(rep)
                unit = rational_equal_up_to_unit(cf.torus_delta_closed(p, q, k, l), ta.delta, delta_tol)
                rows.append(_row("torus", label + " delta", unit.residual, delta_tol, f"unit {unit.sign:+d}t^{unit.power}"))
                tv = torsion_limit(ta)
                expected = cf.torus_torsion_closed(p, q, k, l)
                rows.append(_row("torus", label + " torsion", _rel(tv.value, expected), torsion_rtol, f"{tv.value.real:.10g}"))
    return rows


def twist_cases(ns=TWIST_NS, ss=TWIST_SS):
    """(n, s, root index, Riley root) over the grid, in sorted parameter order."""
    for n in ns:
        for s in ss:
            for i, root in enumerate(riley_roots(n, s)):
                yield n, complex(s), i, root


def twist_suite(
    ns: Iterable[int] = TWIST_NS,
    ss: Iterable[complex] = TWIST_SS,
    delta_tol: float = DEFAULT_TOL,
    torsion_rtol: float = DEFAULT_TOL,
    perturb: float = 0.0,
) -> list[CheckRow]:
    rows = []
    for n, s, i, root in twist_cases(ns, ss):
        params = TwistRepParams(n, s, root.u + perturb)
        label = f"J(2,{2 * n}) s={s:.4g} root {i}"
        try:
            rep = build_twist_rep(params)
        except RepresentationError as exc:
            rows.append(CheckRow("twist", label, math.inf, delta_tol, "fail", f"rejected: {exc}"))
            continue
        if cf.twist_singular(params.x2, params.y):
            rows.append(CheckRow("twist", label, math.nan, delta_tol, "skip", "closed form singular"))
            continue
        ta = twisted_alexander(rep)
        unit = rational_equal_up_to_unit(cf.twist_delta_closed(n, params.x2, params.y), ta.delta, delta_tol)
        rows.append(_row("twist", label + " delta", unit.residual, delta_tol, f"unit {unit.sign:+d}t^{unit.power}"))
        try:
            tv = torsion_limit(ta)
        except TorsionUndefinedError as exc:
            rows.append(CheckRow("twist", label + " torsion", math.nan, torsion_rtol, "skip", str(exc)))
            continue
        expected = cf.twist_torsion_closed(n, params.x2, params.y)
        rows.append(_row("twist", label + " torsion", _rel(tv.value, expected), torsion_rtol))
    return rows


def trefoil_suite(ss: Iterable[complex] = TWIST_SS, rtol: float = 1e-9) -> list[CheckRow]:
    """J(2,2) is the trefoil, so its torsion must be the T(2,3) value."""
    expected = cf.torus_torsion_closed(2, 3, 1, 1)
    rows = []
    for n, s, i, root in twist_cases((1,), ss):
        rep = build_twist_rep(TwistRepParams(n, s, root.u))
        tv = torsion_limit(twisted_alexander(rep))
        rows.append(_row("trefoil", f"J(2,2) s={s:.4g} vs T(2,3)", _rel(tv.value, expected), rtol))
    return rows


def omega_suite(ns: Iterable[int] = OMEGA_NS, ss: Iterable[complex] = TWIST_SS, tol: float = DEFAULT_TOL) -> list[CheckRow]:
    rows = []
    for n, s, i, root in twist_cases(ns, ss):
        label = f"Omega n={n} s={s:.4g} root {i}"
        rep = build_twist_rep(TwistRepParams(n, s, root.u))
        direct = cf.omega_direct(n, rep)
        try:
            closed = cf.omega_closed(n, s, root.u)
        except cf.SingularFormulaError as exc:
            rows.append(CheckRow("omega", label, math.nan, tol, "skip", str(exc)))
            continue
        rows.append(_row("omega", label, float(np.abs(closed - direct).max()), tol))
        if n == 1:
            rows.append(_row("omega", label + " identity", float(np.abs(closed - np.eye(3)).max()), tol))
    return rows


def lemmas_suite(
    max_n: int = 8,
    samples: int = 20,
    seed: int = 20240611,
    lemma_tol: float = 1e-9,
    chebyshev_tol: float = 1e-10,
    riley_ns: Iterable[int] = (1, 2, 3, 4, 5, -1, -2, -3),
    ss: Iterable[complex] = TWIST_SS,
) -> list[CheckRow]:
    """Trace identities: the d_i formulas, X^2 on the Riley locus, X^2 - gamma X Y + Y^2 = 1."""
    rng = np.random.default_rng(seed)
    ns = [n for n in range(-max_n, max_n + 1) if n != 0]
    d_worst, c_worst, skipped = 0.0, 0.0, 0
    for _ in range(samples):
        s = complex(*rng.uniform(0.5, 1.5, 2))
        u = complex(*rng.uniform(-1, 1, 2))
        gamma = complex(*rng.uniform(-2, 2, 2))
        for n in ns:
            try:
                d_worst = max(d_worst, cf.lemma_d_residual(n, s, u))
            except cf.SingularFormulaError:
                skipped += 1
            c_worst = max(c_worst, cf.chebyshev_invariant_residual(n, gamma))
    rows = [
        _row("lemmas", f"d-identities |n|<={max_n}, {samples} random (s,u)", d_worst, lemma_tol, f"{skipped} skipped"),
        _row("lemmas", f"X^2 - gamma X Y + Y^2 = 1, |n|<={max_n}", c_worst, chebyshev_tol),
    ]
    x_worst = 0.0
    for n, s, i, root in twist_cases(riley_ns, ss):
        x_worst = max(x_worst, cf.lemma_x_residual(n, s, root.u))
    rows.append(_row("lemmas", "X^2 identity on Riley roots", x_worst, lemma_tol))
    return rows


def random_sl2(rng, scale: float = 0.35) -> np.ndarray:
    """exp(X) for a random traceless X with N(0, scale^2) complex entries.

    Keeps cond(g) near 1-3: conjugating the 3x3 blocks by Ad(g) scales their
    entries by about cond(g)^4, and the floating-point error of a 3x3
    determinant grows with the cube of that.
    """
    a, b, c = (complex(*rng.normal(scale=scale, size=2)) for _ in range(3))
    lam = cmath.sqrt(a * a + b * c)
    sinhc = cmath.sinh(lam) / lam if abs(lam) > 1e-12 else 1.0
    return cmath.cosh(lam) * np.eye(2) + sinhc * np.array([[a, b], [c, -a]])


def _random_poly_matrix(rng, n: int, degree: int) -> PolyMatrix:
    c = rng.normal(size=(degree + 1, n, n)) + 1j * rng.normal(size=(degree + 1, n, n))
    return PolyMatrix(c, int(rng.integers(-1, 2)))


def structure_suite(seed: int = 7, tol: float = DEFAULT_TOL) -> list[CheckRow]:
    """Fox identity, conjugation and column invariance, det multiplicativity."""
    rng = np.random.default_rng(seed)
    rows = []

    fox_worst = 0
    for _ in range(50):
        letters = [(int(rng.integers(0, 3)), int(rng.choice([-1, 1]))) for _ in range(int(rng.integers(0, 9)))]
        w = Word(tuple(letters))
        total = GroupRingElement()
        for j in range(3):
            total = total + fox_derivative(w, j) * (GroupRingElement.of(Word.generator(j)) - 1)
        fox_worst = max(fox_worst, 0 if total == (GroupRingElement.of(w) - 1) else 1)
    rows.append(_row("structure", "Fox fundamental identity (50 random words)", fox_worst, 0))

    reps = [build_torus_rep(TorusRepParams(2, 5, 1, 3)), build_torus_rep(TorusRepParams(3, 4, 2, 2))]
    for n, s in ((2, 2.0), (-1, 1.0), (3, cmath.exp(1j * math.pi / 5))):
        reps.append(build_twist_rep(TwistRepParams(n, s, riley_roots(n, s)[-1].u)))
    for rep in reps:
        name = rep.presentation.label
        base = twisted_alexander(rep, 1)
        other = twisted_alexander(rep, 2)
        unit = rational_equal_up_to_unit(base.delta, other.delta, tol)
        rows.append(_row("structure", f"{name} column invariance", unit.residual, tol, f"unit {unit.sign:+d}t^{unit.power}"))
        conj = twisted_alexander(rep.conjugate(random_sl2(rng)), 1)
        unit = rational_equal_up_to_unit(base.delta, conj.delta, tol)
        rows.append(_row("structure", f"{name} conjugation invariance", unit.residual, tol))
        rows.append(_row("structure", f"{name} fundamental identity under Phi", fundamental_identity_residual(rep), tol))

    det_worst = 0.0
    for size in (1, 2, 3, 4):
        a = _random_poly_matrix(rng, size, 2)
        b = _random_poly_matrix(rng, size, 2)
        lhs = matrix_det(a @ b)
        rhs = matrix_det(a) * matrix_det(b)
        det_worst = max(det_worst, (lhs - rhs).norm() / max(lhs.norm(), 1e-300))
    rows.append(_row("structure", "det(AB) = det(A) det(B), sizes 1..4", det_worst, 1e-9))
    return rows


SUITES: dict[str, Callable[..., list[CheckRow]]] = {
    "torus": torus_suite,
    "twist": twist_suite,
    "trefoil": trefoil_suite,
    "omega": omega_suite,
    "lemmas": lemmas_suite,
    "structure": structure_suite,
}


def run_suite(name: str, tol: float = DEFAULT_TOL, perturb: float = 0.0) -> list[CheckRow]:
    """Run one named suite (or "all") with a single tolerance knob."""
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, tol, perturb))
        return out
    if name == "torus":
        return torus_suite(delta_tol=tol, torsion_rtol=tol, perturb=perturb)
    if name == "twist":
        return twist_suite(delta_tol=tol, torsion_rtol=tol, perturb=perturb)
    if name == "trefoil":
        return trefoil_suite(rtol=min(tol, 1e-9))
    if name == "omega":
        return omega_suite(tol=tol)
    if name == "lemmas":
        return lemmas_suite(lemma_tol=min(tol, 1e-9), chebyshev_tol=min(tol, 1e-10))
    if name == "structure":
        return structure_suite(tol=tol)
    raise KeyError(f"unknown suite {name!r}")


def summarize(rows: list[CheckRow]) -> dict[str, dict[str, float | int]]:
    out: dict[str, dict[str, float | int]] = {}
    for r in rows:
        entry = out.setdefault(r.suite, {"checks": 0, "failed": 0, "skipped": 0, "max_residual": 0.0})
        entry["checks"] += 1
        if r.status == "fail":
            entry["failed"] += 1
        elif r.status == "skip":
            entry["skipped"] += 1
        if not math.isnan(r.residual):
            entry["max_residual"] = max(entry["max_residual"], r.residual)
    return out

