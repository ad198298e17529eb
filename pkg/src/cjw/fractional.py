"""Fractional integrals and derivatives on the line, and the Hermite-domain fractional Fourier transform."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from scipy import special
from scipy.interpolate import CubicSpline

from .quad import gauss_jacobi_unit, gauss_legendre


@dataclass(frozen=True)
class Func1D:
    """A function of one real variable with optional analytic derivatives.

    ``derivatives[k]`` is the ``(k+1)``-th derivative. ``f`` must accept numpy arrays.
    """

    f: Callable
    derivatives: tuple[Callable, ...] = ()
    grid: np.ndarray | None = None
    values: np.ndarray | None = None

    def __call__(self, t):
        return self.f(t)

    @classmethod
    def from_samples(cls, grid, values) -> "Func1D":
        grid = np.asarray(grid, dtype=float)
        values = np.asarray(values)
        steps = np.diff(grid)
        if grid.ndim != 1 or grid.size < 4 or np.any(steps <= 0):
            raise ValueError("sample grid must be 1-d, strictly increasing and hold at least 4 points")
        if not np.allclose(steps, steps[0], rtol=1e-8, atol=0):
            raise ValueError("sample grid must be uniform")
        spline = CubicSpline(grid, values)
        derivs = tuple(spline.derivative(k) for k in (1, 2, 3))
        return cls(spline, derivs, grid, values)

    def derivative(self, n: int) -> Callable | None:
        if n == 0:
            return self.f
        return self.derivatives[n - 1] if n <= len(self.derivatives) else None


def _as_func(f) -> Func1D:
    return f if isinstance(f, Func1D) else Func1D(f)


# --------------------------------------------------------------------------
# weakly singular integrals  (1/Gamma(a)) int_0^L u^(a-1) g(u) du


@dataclass(frozen=True)
class SingularRule:
    """Gauss-Jacobi on ``[0, L/2]`` plus geometrically graded Gauss-Legendre panels toward ``L``.

    The grading keeps full accuracy when ``g`` itself is singular at ``u = L``,
    which happens whenever the integrand is a fractional integral of something.
    """

    jacobi_nodes: int = 64
    panel_nodes: int = 16
    levels: int = 30

    def nodes(self, alpha: float, L: float) -> tuple[np.ndarray, np.ndarray]:
        v, wv = gauss_jacobi_unit(self.jacobi_nodes, alpha - 1.0)
        half = L / 2
        u0 = half * v
        w0 = half**alpha * wv
        edges = L - half * 0.5 ** np.arange(self.levels + 1)
        edges = np.append(edges, L)
        x, wx = gauss_legendre(self.panel_nodes)
        lo, hi = edges[:-1, None], edges[1:, None]
        hw = (hi - lo) / 2
        u1 = (lo + hw * (1 + x)).ravel()
        w1 = (hw * wx).ravel() * u1 ** (alpha - 1)
        return np.concatenate([u0, u1]), np.concatenate([w0, w1])


DEFAULT_RULE = SingularRule()


def _singular_integral(g: Callable, alpha: float, L: float, rule: SingularRule) -> complex | float:
    u, w = rule.nodes(alpha, L)
    vals = np.asarray(g(u))
    return np.sum(w * vals) / special.gamma(alpha)


def _check(alpha, a, t):
    if not alpha > 0:
        raise ValueError(f"order must be positive, got {alpha}")
    if not t > a:
        raise ValueError(f"need t > a, got t={t}, a={a}")


def fractional_integral(f, alpha: float, a: float, t: float, kind: str = "riemann_liouville",
                        rule: SingularRule = DEFAULT_RULE):
    """Riemann-Liouville or Hadamard fractional integral of order ``alpha`` from ``a`` to ``t``."""
    _check(alpha, a, t)
    f = _as_func(f)
    if kind == "riemann_liouville":
        return _singular_integral(lambda u: f(t - u), alpha, t - a, rule)
    if kind == "hadamard":
        if not a > 0:
            raise ValueError("the Hadamard integral needs a > 0")
        return _singular_integral(lambda u: f(t * np.exp(-u)), alpha, math.log(t / a), rule)
    raise ValueError(f"unknown integral kind {kind!r}")


def richardson_derivative(F: Callable, t: float, n: int, h0: float, levels: int = 6) -> float:
    """``n``-th derivative by central differences extrapolated in ``h**2``."""
    if n == 0:
        return F(t)
    coef = [(-1) ** j * math.comb(n, j) for j in range(n + 1)]
    table: list[list] = []
    h = h0
    for k in range(levels):
        pts = t + (n / 2 - np.arange(n + 1)) * h
        vals = np.array([F(p) for p in pts])
        row = [np.dot(coef, vals) / h**n]
        for i in range(1, k + 1):
            prev = table[k - 1][i - 1]
            row.append(row[i - 1] + (row[i - 1] - prev) / (4**i - 1))
        table.append(row)
        h /= 2
    return table[-1][-1]


def _is_integer(x: float) -> bool:
    return abs(x - round(x)) < 1e-14


def _ordinary_derivative(f: Func1D, n: int, t, step: float):
    d = f.derivative(n)
    if d is not None:
        return d(t)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return np.array([richardson_derivative(f, ti, n, step) for ti in t])


def fractional_derivative(f, alpha: float, a: float, t: float, kind: str = "riemann_liouville",
                          rule: SingularRule = DEFAULT_RULE):
    """Riemann-Liouville or Caputo derivative of order ``alpha`` at ``t`` with base point ``a``.

    Caputo uses analytic derivatives from ``Func1D.derivatives`` when given and
    Richardson-extrapolated differences of ``f`` otherwise.
    """
    _check(alpha, a, t)
    f = _as_func(f)
    n = math.ceil(alpha - 1e-14)
    step = 0.4 * (t - a) / max(n, 1)
    if _is_integer(alpha):
        n = int(round(alpha))
        return np.asarray(_ordinary_derivative(f, n, t, step)).reshape(-1)[0] if n else f(t)
    if kind == "riemann_liouville":
        inner = lambda s: fractional_integral(f, n - alpha, a, s, "riemann_liouville", rule)  # noqa: E731
        return richardson_derivative(inner, t, n, step)
    if kind == "caputo":
        dn = lambda s: _ordinary_derivative(f, n, s, 0.05 * (t - a) / n)  # noqa: E731
        return fractional_integral(dn, n - alpha, a, t, "riemann_liouville", rule)
    raise ValueError(f"unknown derivative kind {kind!r}")


@dataclass(frozen=True)
class PowerRuleReport:
    p: float
    q: float
    t: float
    m: int
    standard: float
    numeric: float
    discrepancy: float
    printed_form: complex
    printed_vs_standard: complex


def power_rule_check(p: float, q: float, t: float = 1.0, m: int = 2) -> PowerRuleReport:
    """Compare the power rule for ``D^q t^(p-1)`` against the numerical derivative.

    ``printed_form`` carries the extra factor ``m**q * exp(i q pi)`` that a
    vector-variable version of the rule attaches; it is reported, not used.
    """
    standard = special.gamma(p) * special.rgamma(p - q) * t ** (p - q - 1)
    f = Func1D(lambda s: np.power(s, p - 1.0))
    if q == 0:
        numeric = float(f(t))
    else:
        numeric = float(np.real(fractional_derivative(f, q, 0.0, t, "riemann_liouville")))
    printed = np.exp(1j * q * np.pi) * m**q * standard
    return PowerRuleReport(
        p, q, t, m,
        standard=float(standard),
        numeric=numeric,
        discrepancy=float(abs(numeric - standard)),
        printed_form=complex(printed),
        printed_vs_standard=complex(printed - standard),
    )


# --------------------------------------------------------------------------
# fractional Fourier transform


def hermite_functions(n_max: int, x) -> np.ndarray:
    """Orthonormal Hermite functions ``psi_0 .. psi_n_max`` at ``x`` (rows are orders)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.pi**-0.25 * np.exp(-(x**2) / 2)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


@dataclass(frozen=True, eq=False)
class HermiteBasis:
    n_max: int = 48
    grid: np.ndarray = field(default_factory=lambda: np.linspace(-12.0, 12.0, 512))

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        if g.ndim != 1 or g.size < 2 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be 1-d and strictly increasing")
        if not np.allclose(np.diff(g), g[1] - g[0], rtol=1e-8, atol=0):
            raise ValueError("grid must be uniform")
        g = g.copy()
        g.setflags(write=False)
        object.__setattr__(self, "grid", g)

    @property
    def dx(self) -> float:
        return float(self.grid[1] - self.grid[0])

    @cached_property
    def matrix(self) -> np.ndarray:
        m = hermite_functions(self.n_max, self.grid)
        m.setflags(write=False)
        return m

    def gram(self) -> np.ndarray:
        return self.matrix @ self.matrix.T * self.dx

    def project(self, values) -> np.ndarray:
        return self.matrix @ np.asarray(values) * self.dx

    def synthesize(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs) @ self.matrix


@dataclass(frozen=True)
class FrftResult:
    grid: np.ndarray
    values: np.ndarray
    coefficients: np.ndarray
    residual: float
    flagged: bool


def frft(f, a: float, basis: HermiteBasis | None = None) -> FrftResult:
    """Fractional Fourier transform of order ``a`` (``a = pi/2`` is the unitary Fourier transform).

    ``f`` is a callable or samples on ``basis.grid``. The projection residual
    ``|f - P f| / |f|`` is returned and flagged above 10%.
    """
    basis = basis or HermiteBasis()
    values = np.asarray(f(basis.grid) if callable(f) else f, dtype=complex)
    if values.shape != basis.grid.shape:
        raise ValueError("samples must match the basis grid")
    c = basis.project(values)
    norm = np.sqrt(np.sum(np.abs(values) ** 2) * basis.dx)
    resid = np.sqrt(np.sum(np.abs(values - basis.synthesize(c)) ** 2) * basis.dx)
    residual = float(resid / norm) if norm > 0 else 0.0
    flagged = residual > 0.1
    if flagged:
        warnings.warn(f"Hermite projection misses {residual:.1%} of the input norm", RuntimeWarning)
    c = c * np.exp(-1j * a * np.arange(basis.n_max + 1))
    return FrftResult(basis.grid, basis.synthesize(c), c, residual, flagged)
