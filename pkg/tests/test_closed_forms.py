import cmath
import math

import numpy as np
import pytest
import sympy as sp

from adjtorsion import closed_forms as cf
from adjtorsion.laurent import LaurentPoly, divide_out_t_minus_1, order_at_one
from adjtorsion.representations import (
    TwistRepParams,
    build_twist_rep,
    chebyshev_pair,
    riley_roots,
    trace_w,
)
from adjtorsion.wada import torsion_limit, twisted_alexander
from adjtorsion.words import twist_word

T = LaurentPoly.t()


def test_torus_delta_trefoil():
    f = cf.torus_delta_closed(2, 3, 1, 1)
    for z in (0.4, 1.7j, -0.3 + 0.8j, 2.2):
        expected = (z**6 - 1) ** 3 / ((z**2 - 1) * (z**3 - 1) * (z**3 + 1) ** 2 * (z**4 + z**2 + 1))
        assert abs(f(z) - expected) < 1e-12 * max(1, abs(expected))


def test_torus_delta_factor_25():
    f = cf.torus_delta_closed(2, 5, 1, 1)
    c = 2 * math.cos(2 * math.pi / 5)
    for z in np.roots([1, 0, -c, 0, 1]):
        assert abs(f.denominator(z)) < 1e-12


def test_torus_numerator_triple_zero():
    for p, q in [(2, 3), (3, 5)]:
        m, _ = order_at_one(cf.torus_delta_closed(p, q, 1, 1).numerator)
        assert m == 3


def test_torus_torsion_closed_values():
    assert cf.torus_torsion_closed(2, 3, 1, 1) == pytest.approx(-3, rel=1e-15)
    expected = -225 / (16 * math.sin(2 * math.pi / 3) ** 2 * math.sin(2 * math.pi / 5) ** 2)
    assert cf.torus_torsion_closed(3, 5, 2, 2) == pytest.approx(expected, rel=1e-15)
    for p, q, k, l in [(2, 7, 1, 5), (3, 4, 2, 2), (5, 7, 4, 6)]:
        assert cf.torus_torsion_closed(p, q, k, l) < 0
    with pytest.raises(ValueError):
        cf.torus_torsion_closed(2, 3, 1, 2)


def test_twist_closed_forms_symbolic_n1():
    x2, y, t = sp.symbols("x2 y t")
    n = 1
    d1 = y + 2 - x2
    d2 = y**2 - y * x2 + x2
    d3 = y**2 - y * x2 + 2 * x2
    middle = ((2 * n - 1) * y**2 + y * x2 - 2 * n * x2 * (x2 - 2)) / d3
    on_locus = {y: x2 - 1}
    assert sp.simplify(middle.subs(on_locus)) == 1
    assert sp.simplify((d1 * d2).subs(on_locus)) == 1
    torsion = -(middle + 2 * n) / (d1 * d2)
    assert sp.simplify(torsion.subs(on_locus)) == -3
    delta = (t - 1) / (d1 * d2) * (n * t**2 + middle * t + n)
    assert sp.simplify(-sp.diff(delta, t).subs(t, 1) - torsion) == 0


@pytest.mark.parametrize("x2", [3.0, 4.5 + 1j, -0.2 + 2j])
def test_twist_delta_n1_on_locus(x2):
    y = x2 - 1
    f = cf.twist_delta_closed(1, x2, y)
    assert f.raw_numerator().allclose(T**3 - 1, 1e-12)
    assert cf.twist_torsion_closed(1, x2, y) == pytest.approx(-3)


@pytest.mark.parametrize("n", [1, 2, -3])
def test_twist_delta_structure(n):
    x2, y = 2.3 + 0.4j, -0.7 + 1.1j
    f = cf.twist_delta_closed(n, x2, y)
    assert abs(f(1.0)) < 1e-14
    quad, _ = divide_out_t_minus_1(f.raw_numerator())
    assert abs(quad.coefficient(0) - quad.coefficient(2)) < 1e-12
    d1, d2, _ = cf.twist_denominators(x2, y)
    assert quad.coefficient(2) * d1 * d2 == pytest.approx(n)
    assert torsion_limit(f).value == pytest.approx(cf.twist_torsion_closed(n, x2, y))


def test_twist_singular_loci():
    x2 = 3.0
    y = x2 - 2  # y + 2 - x^2 = 0
    assert cf.twist_singular(x2, y)
    with pytest.raises(cf.SingularFormulaError):
        cf.twist_delta_closed(2, x2, y)
    with pytest.raises(cf.SingularFormulaError):
        cf.twist_torsion_closed(2, x2, y)
    # y^2 - y x^2 + x^2 = 0
    y = (x2 + cmath.sqrt(x2 * x2 - 4 * x2)) / 2
    assert cf.twist_singular(x2, y)


@pytest.mark.parametrize("s", [cmath.exp(1j * math.pi / 5), cmath.exp(0.9j), 1.0])
def test_figure_eight_torsion_matches_pipeline(s):
    for root in riley_roots(-1, s):
        params = TwistRepParams(-1, s, root.u)
        tv = torsion_limit(twisted_alexander(build_twist_rep(params)))
        expected = cf.twist_torsion_closed(-1, params.x2, params.y)
        assert abs(tv.value - expected) <= 1e-6 * abs(expected)


def test_omega_direct_small_n():
    params = TwistRepParams(2, 2.0, riley_roots(2, 2.0)[0].u)
    rep = build_twist_rep(params)
    W = rep.adjoint_holonomy(twist_word())
    assert np.allclose(cf.omega_direct(1, rep), np.eye(3))
    assert np.allclose(cf.omega_direct(2, rep), np.eye(3) + np.linalg.inv(W))
    assert np.allclose(cf.omega_direct(-1, rep), -W)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("s", [2.0, 1.0, cmath.exp(1j * math.pi / 5)])
def test_omega_closed_matches_direct(n, s):
    for root in riley_roots(n, s):
        rep = build_twist_rep(TwistRepParams(n, s, root.u))
        direct = cf.omega_direct(n, rep)
        closed = cf.omega_closed(n, s, root.u)
        assert np.abs(closed - direct).max() <= 1e-8
        assert abs(np.trace(closed) - np.trace(direct)) <= 1e-8
        if n == 1:
            assert np.abs(closed - np.eye(3)).max() <= 1e-8


@pytest.mark.parametrize("n", [2, 3, -2])
def test_omega_eigen_route(n):
    s = 1.0
    for root in riley_roots(n, s):
        rep = build_twist_rep(TwistRepParams(n, s, root.u))
        try:
            eig = cf.omega_eigen(n, s, root.u)
        except cf.SingularFormulaError:
            continue
        assert np.abs(eig - cf.omega_direct(n, rep)).max() <= 1e-8


def test_omega_singular_prefactor():
    with pytest.raises(cf.SingularFormulaError):
        cf.omega_closed(2, 1.0, 0.0)


def test_d_values_examples():
    s, u = 0.9 + 0.2j, 0.4 - 0.3j
    gamma = trace_w(s, u)
    assert cf.d_values_chebyshev(2, s, u)[0] == pytest.approx(gamma)
    assert cf.d_values_eigen(2, s, u)[0] == pytest.approx(gamma)
    assert cf.d_values_chebyshev(1, s, u)[0] == 2
    assert cf.d_values_eigen(1, s, u)[0] == pytest.approx(2)


def test_lemma_d_random():
    rng = np.random.default_rng(5)
    for _ in range(20):
        s = complex(*rng.uniform(0.5, 1.5, 2))
        u = complex(*rng.uniform(-1, 1, 2))
        for n in (5, -5, 8, -8, 3):
            assert cf.lemma_d_residual(n, s, u) < 1e-9


def test_lemma_d_repeated_eigenvalue():
    # gamma = 2 at u = 0
    with pytest.raises(cf.SingularFormulaError):
        cf.lemma_d_residual(3, 1.5, 0.0)


def test_lemma_x_examples():
    assert cf.lemma_x_residual(1, 2.0, 1.5) == 0
    for root in riley_roots(2, 1.0):
        assert cf.lemma_x_residual(2, 1.0, root.u) < 1e-9
    # off the Riley locus the identity need not hold
    X, _ = chebyshev_pair(2, trace_w(1.0, 0.3))
    assert abs(X * X - cf.lemma_x_squared(1.0, 0.3)) > 1e-3


def test_chebyshev_invariant():
    rng = np.random.default_rng(11)
    for _ in range(20):
        gamma = complex(*rng.uniform(-3, 3, 2))
        for n in range(-8, 9):
            if n:
                assert cf.chebyshev_invariant_residual(n, gamma) < 1e-10
