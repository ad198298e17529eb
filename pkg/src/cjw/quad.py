"""Cached quadrature rules shared by the radial, spectral and fractional code."""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np
from scipy import special


def node_count(default: int) -> int:
    """Default node count, overridden by the ``CJW_QUAD_NODES`` environment variable."""
    raw = os.environ.get("CJW_QUAD_NODES")
    if raw is None or raw.strip() == "":
        return default
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"CJW_QUAD_NODES must be an integer, got {raw!r}") from exc
    if n < 2:
        raise ValueError("CJW_QUAD_NODES must be at least 2")
    return n


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=64)
def gauss_jacobi_unit(n: int, power: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on (0, 1) for the weight ``u**power``."""
    x, w = special.roots_jacobi(n, 0.0, power)
    u = (1 + x) / 2
    w = w / 2 ** (power + 1)
    u.setflags(write=False)
    w.setflags(write=False)
    return u, w


def panel_rule(edges, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule over consecutive panels ``edges[i], edges[i+1]``."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(n)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = (hi - lo) / 2
    return (lo + half * (1 + x)).ravel(), (half * w).ravel()


def half_line_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre on (0, pi/2) pulled back to (0, inf) through ``r = tan(theta)``."""
    x, w = gauss_legendre(n)
    theta = np.pi / 4 * (1 + x)
    r = np.tan(theta)
    return r, np.pi / 4 * w / np.cos(theta) ** 2


def iterated_average(partial_sums: np.ndarray) -> float | complex:
    """Euler-type acceleration of an alternating series from its partial sums."""
    s = np.asarray(partial_sums)
    while s.size > 1:
        s = (s[:-1] + s[1:]) / 2
    return s[0]
