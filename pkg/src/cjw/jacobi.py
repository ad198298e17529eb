"""Clifford-Jacobi polynomials: generation, Rodrigues cross-check and moments."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special

from .axial import (
    AxialPolynomial,
    AxialValue,
    WeightParams,
    axial_dirac,
    axial_eval,
    axial_eval_radius,
    axial_mul,
    weight_coeffs,
    weight_model,
)
from .quad import half_line_rule, node_count


@dataclass(frozen=True)
class JacobiPolynomial:
    ell: int
    params: WeightParams
    poly: AxialPolynomial

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __call__(self, x) -> AxialValue:
        return axial_eval(self.poly, x)

    def at_radius(self, r) -> AxialValue:
        return axial_eval_radius(self.poly, r)


def generate(ell: int, w: WeightParams) -> JacobiPolynomial:
    """Run the three-term recursion from ``G_0 = 1`` up to degree ``ell``."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    one_minus_x2 = AxialPolynomial(w.m, (1, 0, -1))
    g = AxialPolynomial(w.m, (1,))
    for k in range(ell):
        factor = AxialPolynomial(w.m, (-(w.alpha - w.beta), -(w.alpha + w.beta - 2 * k)))
        g = axial_mul(factor, g) - axial_mul(one_minus_x2, axial_dirac(g))
    return JacobiPolynomial(ell, w, g)


def surface_area(m: int) -> float:
    return float(2 * np.pi ** (m / 2) / special.gamma(m / 2))


# --------------------------------------------------------------------------
# Rodrigues-type representation
#
# Iterated derivatives of the weight are kept as a finite sum of terms
# coef * z^(-j) * (1 - z)^a (1 + z)^b in the complex model of axial functions,
# on which the Dirac operator acts as F -> -F'(z) - (m-1)(F(z) - F(-z))/(2z).


def _dirac_terms(terms: dict, m: int) -> dict:
    out: dict = {}

    def add(key, val):
        if val != 0:
            out[key] = out.get(key, 0.0) + val

    half = (m - 1) / 2
    for (j, a, b), c in terms.items():
        add((j + 1, a, b), j * c)
        add((j, a - 1, b), a * c)
        add((j, a, b - 1), -b * c)
        add((j + 1, a, b), -half * c)
        add((j + 1, b, a), half * (-1) ** j * c)
    return out


def weight_derivative_terms(w: WeightParams, ell: int) -> dict:
    """Term tree for the ``ell``-fold Dirac derivative of the weight."""
    terms = {(0, w.alpha, w.beta): 1.0}
    for _ in range(ell):
        terms = _dirac_terms(terms, w.m)
    return terms


def _eval_terms(terms: dict, z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z, dtype=complex)
    for (j, a, b), c in terms.items():
        out += c * z ** (-j) * weight_model(a, b, z)
    return out


_SERIES_RADIUS = 0.2
_SERIES_TERMS = 96


def weight_derivative_eval(w: WeightParams, ell: int, r) -> AxialValue:
    """``(d^ell w)(x)`` at radii ``r``, via the term tree or, near 0, the Taylor series."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    fp = np.empty(r.shape, complex)
    fm = np.empty(r.shape, complex)
    far = r >= _SERIES_RADIUS
    if far.any():
        terms = weight_derivative_terms(w, ell)
        z = 1j * r[far]
        fp[far] = _eval_terms(terms, z)
        fm[far] = _eval_terms(terms, -z)
    if (~far).any():
        series = weight_coeffs(w, _SERIES_TERMS)
        for _ in range(ell):
            series = axial_dirac(series)
        near = axial_eval_radius(series, r[~far])
        fp[~far], fm[~far] = near.model()
    return AxialValue.from_model(fp, fm, r)


def rodrigues_residual(ell: int, w: WeightParams, points) -> float:
    """Largest relative gap between ``G_ell`` and ``(-1)^ell w_{ell-a, ell-b} d^ell w_{a,b}``.

    Points where the prefactor overflows are skipped with a warning.
    """
    if ell > 4:
        raise ValueError("rodrigues_residual supports ell <= 4")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[-1] != w.m:
        raise ValueError(f"points must have {w.m} components")
    r = np.linalg.norm(pts, axis=-1)
    g = generate(ell, w).at_radius(r)
    if ell == 0:
        return 0.0
    deriv = weight_derivative_eval(w, ell, r)
    z = 1j * r
    with np.errstate(over="ignore", invalid="ignore"):
        pre_p = weight_model(ell - w.alpha, ell - w.beta, z)
        pre_m = weight_model(ell - w.alpha, ell - w.beta, -z)
    dp, dm = deriv.model()
    rhs = AxialValue.from_model((-1) ** ell * pre_p * dp, (-1) ** ell * pre_m * dm, r)
    ok = np.isfinite(rhs.scalar) & np.isfinite(rhs.radial)
    if not ok.all():
        warnings.warn(f"skipped {int((~ok).sum())} points where the prefactor overflows", RuntimeWarning)
    if not ok.any():
        return float("nan")
    ds = np.asarray(g.scalar)[ok] - np.asarray(rhs.scalar)[ok]
    dv = np.asarray(g.radial)[ok] - np.asarray(rhs.radial)[ok]
    gap = np.sqrt(np.abs(ds) ** 2 + np.abs(dv) ** 2)
    return float(np.max(gap / (1 + np.asarray(g.magnitude())[ok])))


# --------------------------------------------------------------------------
# moments


@dataclass(frozen=True)
class MomentResult:
    scalar: complex
    vector: complex
    abs_integral: float

    def relative(self) -> float:
        if self.abs_integral == 0:
            return 0.0
        return float(np.hypot(abs(self.scalar), abs(self.vector)) / self.abs_integral)


def moment_profile(k: int, t: int, w: WeightParams, r) -> AxialValue:
    """``x^k G_t^{a+t, b+t}(x) w_{a,b}(x)`` at radii ``r``."""
    g = generate(t, w.shifted(t, t)).poly
    poly = axial_mul(AxialPolynomial.monomial(w.m, k), g)
    z = 1j * np.asarray(r, dtype=float)
    p = axial_eval_radius(poly, r)
    pp, pm = p.model()
    return AxialValue.from_model(pp * weight_model(w.alpha, w.beta, z), pm * weight_model(w.alpha, w.beta, -z), r)


def moment_integral(k: int, t: int, w: WeightParams, nodes: int | None = None) -> MomentResult:
    """Integral of ``x^k G_t^{a+t, b+t} w_{a,b}`` over R^m.

    The grade-one part integrates to zero over every sphere, so the vector
    channel is identically zero; the scalar part reduces to a radial
    integral computed with a tan-substituted Gauss-Legendre rule.
    """
    if k < 0 or t < 0:
        raise ValueError("k and t must be nonnegative")
    if not k + 2 * t + w.alpha + w.beta + w.m < 0:
        raise ValueError(
            f"moment integral diverges: need k + 2t + alpha + beta + m < 0, "
            f"got {k + 2 * t + w.alpha + w.beta + w.m}"
        )
    r, wt = half_line_rule(nodes or node_count(256))
    val = moment_profile(k, t, w, r)
    jac = surface_area(w.m) * r ** (w.m - 1) * wt
    scalar = complex(np.sum(jac * np.asarray(val.scalar)))
    absint = float(np.sum(jac * np.asarray(val.magnitude())))
    return MomentResult(scalar, 0j, absint)
