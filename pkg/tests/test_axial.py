import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from cjw.axial import (
    AxialPolynomial,
    WeightParams,
    axial_dirac,
    axial_eval,
    axial_eval_radius,
    axial_mul,
    ck_extension,
    generalized_binomial,
    weight_coeffs,
    weight_dirac,
    weight_dirac_radius,
    weight_eval,
    weight_eval_radius,
)
from cjw.clifford import Multivector, embed_vector

exps = st.floats(-10, 10, allow_nan=False)


def P(m, *c):
    return AxialPolynomial(m, np.array(c, dtype=complex))


def test_trailing_zeros_are_trimmed():
    assert P(2, 1, 2, 0, 0).degree == 1
    assert P(2, 0, 0).is_zero


def test_product_examples():
    assert np.allclose(axial_mul(P(2, 1, 1), P(2, 1, -1)).array(), [1, 0, -1])
    assert np.allclose(axial_mul(P(2, 0, 1), P(2, 0, 1)).array(), [0, 0, 1])


def test_integer_weight_matches_binomial_expansion():
    w = weight_coeffs(WeightParams(2, 3, 2), 8)
    # (1-x)^2 (1+x)^3 expanded by hand
    assert np.allclose(w.array(), [1, 1, -2, -2, 1, 1])
    ref = axial_mul(weight_coeffs(WeightParams(2, 0, 2), 3), weight_coeffs(WeightParams(0, 3, 2), 4))
    assert np.allclose(w.array(), ref.array())


def test_dirac_examples():
    for m in (2, 3, 5):
        assert np.allclose(axial_dirac(P(m, 0, 1)).array(), [-m])
        assert np.allclose(axial_dirac(P(m, 0, 0, 1)).array(), [0, -2])
        assert axial_dirac(P(m, 5)).is_zero
        assert np.allclose(axial_dirac(P(m, 1, -1)).array(), [m])


def test_eval_examples():
    v = axial_eval(P(2, 0, 1), np.array([1.0, 2.0]))
    assert v.scalar == 0 and np.isclose(v.radial, math.sqrt(5))
    x = np.array([0.6, 0.8])
    v = axial_eval(P(2, 1, 0, -1), x)
    assert np.isclose(v.scalar, 2) and np.isclose(v.radial, 0)
    v = axial_eval_radius(P(2, -1, -1), 0.7)
    assert np.isclose(v.scalar, -1) and np.isclose(v.radial, -0.7)


def test_eval_requires_trailing_axis():
    with pytest.raises(ValueError):
        axial_eval(P(3, 1, 1), np.zeros((4, 2)))


@given(st.integers(0, 6), st.lists(st.floats(-2, 2), min_size=3, max_size=3))
def test_eval_matches_multivector_powers(n, x):
    p = AxialPolynomial.monomial(3, n)
    X = embed_vector(x)
    power = Multivector.scalar(3)
    for _ in range(n):
        power = power * X
    got = axial_eval(p, np.array(x)).to_multivector(np.array(x))
    assert got.isclose(power, rtol=1e-10, atol=1e-10)


@given(exps, exps)
def test_weight_coeffs_match_binomial_convolution(alpha, beta):
    bb = generalized_binomial(beta, 16)
    ba = generalized_binomial(alpha, 16) * (-1.0) ** np.arange(16)
    ref = np.convolve(bb, ba)[:16]
    got = coeffs(alpha, beta, 15)
    scale = np.convolve(np.abs(bb), np.abs(ba))[:16] + 1e-300
    assert np.max(np.abs(got - ref) / scale) < 1e-13


def test_binomial_and_first_coefficients():
    assert np.allclose(generalized_binomial(0.5, 3), [1, 0.5, -0.125])
    assert np.allclose(generalized_binomial(2, 5), [1, 2, 1, 0, 0])
    a = weight_coeffs(WeightParams(2.5, -1.5, 2), 3).array()
    assert np.isclose(a[0], 1) and np.isclose(a[1], -1.5 - 2.5)


def test_coefficient_lemma_example():
    a = lambda al, be: weight_coeffs(WeightParams(al, be, 2), 6).array()  # noqa: E731
    assert np.isclose(a(2, 3)[2], -2)
    assert np.isclose(2 * a(2, 3)[2], 3 * a(2, 2)[1] - 2 * a(1, 3)[1])


def coeffs(alpha, beta, n):
    out = np.zeros(n + 1, complex)
    c = weight_coeffs(WeightParams(alpha, beta, 2), n).array()
    out[: c.size] = c
    return out


@given(exps, exps)
def test_coefficient_lemma(alpha, beta):
    # the identity relates exponents one apart; that shift has to be exact in floating point
    assume((alpha - 1) + 1 == alpha and (beta - 1) + 1 == beta)
    a, b1, a1 = coeffs(alpha, beta, 31), coeffs(alpha, beta - 1, 30), coeffs(alpha - 1, beta, 30)
    k = np.arange(31)
    lhs = (k + 1) * a[k + 1]
    rhs = beta * b1[k] - alpha * a1[k]
    scale = np.abs(lhs) + np.abs(beta * b1[k]) + np.abs(alpha * a1[k]) + 1e-300
    assert np.max(np.abs(lhs - rhs) / scale) < 1e-11


def test_weight_eval_examples():
    v = weight_eval(WeightParams(-3.3, 1.7, 2), np.zeros(2))
    assert v.scalar == 1 and v.radial == 0
    r = np.linspace(0, 4, 9)
    v = weight_eval_radius(WeightParams(1, 1, 2), r)
    assert np.allclose(v.scalar, 1 + r**2) and np.allclose(v.radial, 0)
    v = weight_eval_radius(WeightParams(-1, -1, 2), 1.0)
    assert np.isclose(v.scalar, 0.5) and np.isclose(v.radial, 0)


@given(exps, exps, st.floats(0, 0.5))
def test_weight_eval_agrees_with_series(alpha, beta, r):
    w = WeightParams(alpha, beta, 2)
    v = weight_eval_radius(w, r)
    s = axial_eval_radius(weight_coeffs(w, 80), r)
    scale = max(1.0, abs(v.scalar) + abs(v.radial))
    assert abs(v.scalar - s.scalar) < 1e-9 * scale and abs(v.radial - s.radial) < 1e-9 * scale


@given(exps, exps, st.lists(st.floats(-3, 3), min_size=2, max_size=2))
def test_weight_swap_symmetry(alpha, beta, x):
    x = np.array(x)
    a = weight_eval(WeightParams(alpha, beta, 2), -x).to_multivector(-x)
    b = weight_eval(WeightParams(beta, alpha, 2), x).to_multivector(x)
    assert a.isclose(b, rtol=1e-12, atol=1e-12)


def test_weight_dirac_examples():
    r = np.linspace(0.1, 3, 7)
    v = weight_dirac_radius(WeightParams(1, 1, 3), r)
    assert np.allclose(v.scalar, 0) and np.allclose(v.radial, 2 * r)
    for m in (2, 3, 4):
        v = weight_dirac_radius(WeightParams(1, 0, m), r)
        assert np.allclose(v.scalar, m) and np.allclose(v.radial, 0)
    v = weight_dirac(WeightParams(0, 0, 2), np.ones((3, 2)))
    assert np.allclose(v.scalar, 0) and np.allclose(v.radial, 0)


@given(st.floats(-8, 2), st.integers(2, 4))
def test_weight_dirac_equal_exponents(alpha, m):
    r = np.linspace(0.05, 3, 11)
    v = weight_dirac_radius(WeightParams(alpha, alpha, m), r)
    assert np.allclose(v.scalar, 0, atol=1e-12)
    assert np.allclose(v.radial, 2 * alpha * r * (1 + r**2) ** (alpha - 1), rtol=1e-10, atol=1e-14)


@given(exps, exps, st.integers(2, 4))
def test_weight_dirac_continuous_at_origin(alpha, beta, m):
    w = WeightParams(alpha, beta, m)
    tiny = weight_dirac_radius(w, np.array([1e-7, 2e-6]))
    assert np.allclose(tiny.scalar[0], tiny.scalar[1], rtol=1e-8, atol=1e-8)


def test_weight_dirac_matches_polynomial_rule_for_integer_exponents():
    for alpha, beta in [(2, 1), (0, 3), (3, 2)]:
        w = WeightParams(alpha, beta, 3)
        poly = axial_dirac(weight_coeffs(w, alpha + beta + 1))
        r = np.linspace(0.0, 2.0, 9)
        got, ref = weight_dirac_radius(w, r), axial_eval_radius(poly, r)
        assert np.allclose(got.scalar, ref.scalar) and np.allclose(got.radial, ref.radial)


def test_ck_extension_examples():
    x = np.array([[0.3, -0.4], [1.0, 2.0]])
    r = np.linalg.norm(x, axis=-1)
    m, x0 = 2, 0.7
    v = ck_extension(P(m, 1), x0, x)
    assert np.allclose(v.scalar, 1) and np.allclose(v.radial, 0)
    v = ck_extension(P(m, 0, 1), x0, x)
    assert np.allclose(v.scalar, m * x0) and np.allclose(v.radial, r)
    v = ck_extension(P(m, 0, 0, 1), x0, x)
    assert np.allclose(v.scalar, -(r**2) + m * x0**2) and np.allclose(v.radial, 2 * x0 * r)


def test_csv_roundtrip():
    p = P(3, 1.5, -2 + 1j, 0.1)
    line = p.to_csv()
    assert line.startswith("3,2,1.5,0.0,-2.0,1.0,")
    assert AxialPolynomial.from_csv(line) == p
