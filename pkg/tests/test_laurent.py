import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adjtorsion.laurent import (
    EPS_TRIM,
    LaurentPoly,
    RationalFunction,
    divide_out_t_minus_1,
    order_at_one,
    rational_equal_up_to_unit,
)

T = LaurentPoly.t()
ONE = LaurentPoly.constant(1.0)


def P(d):
    return LaurentPoly.from_dict(d)


finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complex_st = st.builds(complex, finite, finite)
poly_st = st.builds(
    lambda cs, lo: LaurentPoly(cs, lo),
    st.lists(complex_st, min_size=1, max_size=9),
    st.integers(-4, 4),
)


# edge trimming loses up to EPS_TRIM relative per operation
def close(p, q, tol=10 * EPS_TRIM):
    scale = max(p.norm(), q.norm(), 1.0)
    return (p - q).norm() <= tol * scale


def test_arith_examples():
    assert (T - 1) * (T + 1) == P({2: 1, 0: -1})
    assert T.shift(-2) + 1 + (-T.shift(-2)) == ONE
    assert (1 + T + T * T) * (T - 1) == P({3: 1, 0: -1})


def test_eval_examples():
    assert P({2: 1, 0: -1})(1.0) == 0
    assert LaurentPoly.monomial(-1)(2.0) == 0.5
    assert ((T**6 - 1) ** 3)(2.0) == pytest.approx(250047)
    with pytest.raises(ZeroDivisionError):
        LaurentPoly.monomial(-1)(0.0)
    assert LaurentPoly.monomial(2)(0.0) == 0


def test_eval_vectorized():
    p = P({-1: 2, 0: 1, 3: 1j})
    z = np.exp(1j * np.linspace(0, 3, 7))
    expected = 2 / z + 1 + 1j * z**3
    assert np.allclose(p(z), expected, atol=1e-14)


def test_trimming_and_zero():
    p = LaurentPoly([1e-15, 1.0, 2.0, 1e-14], -1)
    assert p.min_degree == 0 and p.span == 1
    z = T - T
    assert z.is_zero() and z.min_degree == 0 and z.norm() == 0
    with pytest.raises(ValueError):
        LaurentPoly([np.nan])


def test_divide_out_examples():
    q, r = divide_out_t_minus_1(P({2: 1, 0: -1}))
    assert q == T + 1 and r == 0
    q, _ = divide_out_t_minus_1(P({3: 1, 0: -1}))
    assert q == P({2: 1, 1: 1, 0: 1})
    with pytest.raises(ValueError):
        divide_out_t_minus_1(P({2: 1, 0: 1}))


def test_order_at_one():
    m, rest = order_at_one((T - 1) ** 3 * (T + 2))
    assert m == 3
    assert close(rest, T + 2)


@settings(max_examples=100, deadline=None)
@given(poly_st, poly_st, poly_st)
def test_ring_axioms(p, q, r):
    assert close((p + q) + r, p + (q + r))
    assert close(p + q, q + p)
    assert close((p * q) * r, p * (q * r))
    assert close(p * q, q * p)
    assert close(p * (q + r), p * q + p * r)
    assert close(p * ONE, p)
    assert (p - p).is_zero()


@settings(max_examples=100, deadline=None)
@given(poly_st)
def test_divide_out_roundtrip(p):
    f = p * (T - 1)
    q, _ = divide_out_t_minus_1(f)
    assert close(q * (T - 1), f)
    assert close(q, p, 1e-10)


@settings(max_examples=100, deadline=None)
@given(poly_st, complex_st)
def test_eval_is_homomorphism(p, z):
    z = z if abs(z) > 0.1 else z + 1
    q = p * (T + 2)
    # trimming and rounding errors scale with max|c| * sum |z|^k over the span, not with |q(z)|
    weight = q.norm() * sum(abs(z) ** k for k in range(p.min_degree, p.max_degree + 2))
    assert abs(q(z) - p(z) * (z + 2)) <= 1e-9 * max(1.0, weight)


def test_unit_examples():
    f = RationalFunction(T - 1, T)
    g = RationalFunction(T * T - T, T * T)
    rep = rational_equal_up_to_unit(f, g)
    assert (rep.equal, rep.sign, rep.power) == (True, 1, 0)
    rep = rational_equal_up_to_unit(RationalFunction(T - 1, ONE), RationalFunction(T * T - T, ONE))
    assert (rep.equal, rep.sign, rep.power) == (True, 1, 1)
    rep = rational_equal_up_to_unit(RationalFunction(T - 1, ONE), RationalFunction(1 - T, ONE))
    assert (rep.equal, rep.sign, rep.power) == (True, -1, 0)
    rep = rational_equal_up_to_unit(RationalFunction(T - 1, ONE), RationalFunction(T + 1, ONE))
    assert not rep.equal


def test_unit_detects_scalar_mismatch():
    rep = rational_equal_up_to_unit(RationalFunction(T - 1, ONE), RationalFunction((T - 1).scale(2), ONE))
    assert not rep.equal


rational_st = st.builds(RationalFunction, poly_st, poly_st.filter(lambda p: not p.is_zero()))


@settings(max_examples=100, deadline=None)
@given(rational_st, st.integers(-5, 5), st.integers(-5, 5), st.sampled_from([1, -1]))
def test_unit_comparator_properties(f, k1, k2, c):
    if f.numerator.is_zero():
        return
    assert rational_equal_up_to_unit(f, f).equal
    g = RationalFunction(f.raw_numerator().shift(k1).scale(c), f.denominator.shift(k2))
    fwd = rational_equal_up_to_unit(f, g, 1e-10)
    back = rational_equal_up_to_unit(g, f, 1e-10)
    assert fwd.equal and back.equal
    assert fwd.sign == back.sign == c
    assert fwd.power == k1 - k2 == -back.power


def test_rational_canonical_form():
    f = RationalFunction(T.shift(2) - T, T.shift(-2))
    assert f.numerator.min_degree == 0 and f.denominator.min_degree == 0
    assert f.shift == 2
    assert f(2.0) == pytest.approx((8 - 2) / 0.5)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(T, LaurentPoly())


@settings(max_examples=100, deadline=None)
@given(poly_st)
def test_json_roundtrip_bit_exact(p):
    text = json.dumps(p.to_json())
    back = LaurentPoly.from_json(json.loads(text))
    assert back == p
    assert json.dumps(back.to_json()) == text


def test_rational_json_roundtrip():
    f = RationalFunction((T - 1) * P({0: 0.1 + 0.3j, 2: np.pi}), T * T + 1)
    data = json.loads(json.dumps(f.to_json()))
    g = RationalFunction.from_json(data)
    assert g.raw_numerator() == f.raw_numerator() and g.denominator == f.denominator


def test_unit_comparator_tiny_coefficients():
    tiny = LaurentPoly.constant(1e-300j)
    f = RationalFunction(tiny, tiny)
    rep = rational_equal_up_to_unit(f, RationalFunction(tiny.scale(-1), tiny.shift(1)))
    assert (rep.equal, rep.sign, rep.power) == (True, -1, -1)
