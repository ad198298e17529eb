import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cjw.fractional import (
    Func1D,
    HermiteBasis,
    frft,
    fractional_derivative,
    fractional_integral,
    hermite_functions,
    power_rule_check,
)
from cjw.verify import hermite_reference

orders = st.floats(0.05, 2.0)


def poly_integral(coeffs, g, t):
    """``J^g`` of ``sum c_k t^k`` in closed form."""
    return sum(c * math.factorial(k) / math.gamma(k + g + 1) * t ** (k + g) for k, c in enumerate(coeffs))


def test_integral_of_identity_order_one():
    f = Func1D(lambda s: s)
    for t in (0.5, 1.0, 3.0):
        assert abs(fractional_integral(f, 1.0, 0.0, t) - t**2 / 2) < 1e-13


def test_half_integral_composition_example():
    one = Func1D(lambda s: np.ones_like(s))
    inner = Func1D(lambda s: np.array([fractional_integral(one, 0.5, 0.0, x) for x in np.atleast_1d(s)]))
    assert abs(fractional_integral(inner, 0.5, 0.0, 1.0) - 1.0) < 1e-8


@given(orders, orders, st.floats(0.2, 3.0))
def test_semigroup(a, b, t):
    coeffs = (1.0, 2.0, -0.5)
    f = Func1D(lambda s: coeffs[0] + coeffs[1] * s + coeffs[2] * s**2)
    inner = Func1D(lambda s: np.array([fractional_integral(f, a, 0.0, x) for x in np.atleast_1d(s)]))
    got = fractional_integral(inner, b, 0.0, t)
    ref = poly_integral(coeffs, a + b, t)
    assert abs(got - ref) <= 1e-7 * abs(ref)


@given(st.floats(0.05, 3.0), st.floats(1.05, 20.0))
def test_hadamard_of_one(alpha, t):
    one = Func1D(lambda s: np.ones_like(s))
    ref = math.log(t) ** alpha / math.gamma(alpha + 1)
    assert abs(fractional_integral(one, alpha, 1.0, t, "hadamard") - ref) <= 1e-7 * ref


def test_caputo_examples():
    f = Func1D(lambda s: s, (lambda s: np.ones_like(s),))
    for t in (0.1, 1.0, 4.0):
        assert abs(fractional_derivative(f, 0.5, 0.0, t, "caputo") - 2 * math.sqrt(t / math.pi)) < 1e-6 * math.sqrt(t)
    const = Func1D(lambda s: 3.0 + 0 * s)
    for q in (0.2, 0.5, 1.3, 2.7):
        assert abs(fractional_derivative(const, q, 0.0, 2.0, "caputo")) < 1e-12


def test_rl_half_derivative_of_one():
    one = Func1D(lambda s: np.ones_like(s))
    for t in (0.5, 1.0, 2.0):
        ref = t**-0.5 / math.gamma(0.5)
        assert abs(fractional_derivative(one, 0.5, 0.0, t) - ref) < 1e-6 * ref


@given(st.floats(0.1, 1.9), st.floats(0.5, 2.5))
def test_caputo_equals_rl_when_initial_values_vanish(q, t):
    # f = t^3 + t^2 vanishes with its first derivative at 0
    f = Func1D(lambda s: s**3 + s**2, (lambda s: 3 * s**2 + 2 * s, lambda s: 6 * s + 2))
    rl = fractional_derivative(f, q, 0.0, t)
    cap = fractional_derivative(f, q, 0.0, t, "caputo")
    assert abs(rl - cap) <= 1e-6 * abs(cap)


def test_sampled_input_caputo():
    t = np.linspace(0, 3, 61)
    f = Func1D.from_samples(t, t)
    assert abs(fractional_derivative(f, 0.5, 0.0, 2.0, "caputo") - 2 * math.sqrt(2 / math.pi)) < 1e-6


@pytest.mark.parametrize(
    "call",
    [
        lambda f: fractional_integral(f, 0.5, 1.0, 1.0),
        lambda f: fractional_integral(f, 0.0, 0.0, 1.0),
        lambda f: fractional_derivative(f, -0.5, 0.0, 1.0),
        lambda f: fractional_integral(f, 0.5, 0.0, 1.0, "hadamard"),
    ],
)
def test_precondition_errors(call):
    with pytest.raises(ValueError):
        call(Func1D(lambda s: s))


def test_power_rule_examples():
    r = power_rule_check(2, 1)
    assert r.standard == 1 and r.discrepancy < 1e-10
    r = power_rule_check(3, 0.5)
    assert abs(r.standard - math.gamma(3) / math.gamma(2.5)) < 1e-14
    assert abs(r.standard - 1.5045) < 1e-4 and r.discrepancy < 1e-6
    r = power_rule_check(2.5, 0)
    assert r.discrepancy == 0
    # the vector-variable constant differs from the standard rule
    assert abs(power_rule_check(3, 0.5, m=2).printed_vs_standard) > 0.1


def test_hermite_recurrence_matches_reference():
    x = np.linspace(-10, 10, 401)
    H = hermite_functions(40, x)
    for n in range(41):
        assert np.max(np.abs(H[n] - hermite_reference(n, x))) < 1e-12


def test_gram_is_identity():
    assert np.max(np.abs(HermiteBasis().gram() - np.eye(49))) < 1e-8
    wide = HermiteBasis(64, np.linspace(-16, 16, 1024))
    assert np.max(np.abs(wide.gram() - np.eye(65))) < 1e-8


def test_frft_identity_and_eigenfunctions():
    basis = HermiteBasis()
    f = np.exp(-((basis.grid - 1.0) ** 2))
    out = frft(f, 0.0, basis)
    assert np.max(np.abs(out.values - f)) < 1e-8 and not out.flagged
    for n in range(21):
        h = hermite_reference(n, basis.grid)
        assert np.max(np.abs(frft(h, np.pi / 2, basis).values - (-1j) ** n * h)) < 1e-7


@given(st.floats(-np.pi, np.pi), st.floats(-np.pi, np.pi), st.integers(0, 1000))
def test_frft_additivity_and_norm(a, b, seed):
    basis = HermiteBasis()
    rng = np.random.default_rng(seed)
    c = (rng.normal(size=21) + 1j * rng.normal(size=21)) * np.exp(-0.1 * np.arange(21))
    f = basis.synthesize(np.pad(c, (0, 28)))
    ab = frft(frft(f, a, basis).values, b, basis).values
    direct = frft(f, a + b, basis).values
    assert np.linalg.norm(ab - direct) <= 1e-7 * np.linalg.norm(direct)
    norm = lambda v: np.sqrt(np.sum(np.abs(v) ** 2) * basis.dx)  # noqa: E731
    assert abs(norm(frft(f, a, basis).values) - norm(f)) <= 1e-8 * norm(f)


def test_frft_flags_poor_projection():
    basis = HermiteBasis()
    box = (np.abs(basis.grid) < 11).astype(float) * np.cos(8 * basis.grid)
    with pytest.warns(RuntimeWarning):
        assert frft(box, 0.3, basis).flagged
