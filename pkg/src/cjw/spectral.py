"""Fourier transforms of radial and axial functions on R^m via Hankel-type quadrature.

Transform convention: ``F(f)(u) = int exp(-i <x, u>) f(x) dV(x)`` with no
normalising constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import special

from .quad import gauss_legendre, iterated_average, node_count, panel_rule


def _bessel_ratio(mu: float, nu: float, z) -> np.ndarray:
    """``J_mu(z) / z^nu`` for ``mu >= nu``, with its power series near ``z = 0``."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = z < 1e-2
    zs = z[small]
    q = (zs / 2) ** 2
    series = np.zeros_like(zs)
    term = np.ones_like(zs) / special.gamma(mu + 1)
    for k in range(6):
        series += term
        term = -term * q / ((k + 1) * (mu + k + 1))
    out[small] = zs ** (mu - nu) * 2.0**-mu * series
    zb = z[~small]
    out[~small] = special.jv(mu, zb) / zb**nu
    return out


def sphere_kernel(r, rho, m: int) -> np.ndarray:
    """``int_{S^(m-1)} exp(-i r rho <w, xi>) d xi`` in closed Bessel form."""
    if m < 2:
        raise ValueError("sphere_kernel needs m >= 2")
    nu = m / 2 - 1
    z = np.asarray(r, dtype=float) * np.asarray(rho, dtype=float)
    return (2 * np.pi) ** (m / 2) * _bessel_ratio(nu, nu, z)


@lru_cache(maxsize=32)
def _zeros_table(mu: float, count: int) -> np.ndarray:
    zmax = np.pi * (count + mu / 2 + 2) + 10
    z = np.arange(0.25, zmax, 0.25)
    v = special.jv(mu, z)
    idx = np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0][:count]
    lo, hi = z[idx], z[idx + 1]
    flo = special.jv(mu, lo)
    for _ in range(60):
        mid = (lo + hi) / 2
        fm = special.jv(mu, mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    out = (lo + hi) / 2
    out.setflags(write=False)
    return out


def bessel_zeros(mu: float, upto: float, extra: int = 0) -> np.ndarray:
    """Positive zeros of ``J_mu`` below ``upto`` followed by ``extra`` further zeros."""
    need = int(upto / np.pi + mu / 2 + 4) + extra
    count = 1 << max(need - 1, 1).bit_length()
    table = _zeros_table(float(mu), count)
    inside = table[table < upto]
    after = table[table >= upto][:extra]
    return np.concatenate([inside, after])


@dataclass(frozen=True)
class RadialProfile:
    """Profile ``s(r)`` with decay hint ``|s(r)| = O(r^-decay)`` and a characteristic width."""

    func: Callable
    decay: float = np.inf
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    def __call__(self, r):
        return np.asarray(self.func(np.asarray(r, dtype=float)), dtype=complex)


_TAIL_PANELS = 48
_EULER_THRESHOLD = 20.0


def _support(profile: RadialProfile, m: int) -> float:
    r = profile.scale * np.geomspace(1e-2, 1e4, 400)
    g = np.abs(profile(r)) * r ** (m - 1)
    peak = g.max()
    if peak == 0:
        return profile.scale
    alive = np.nonzero(g > 1e-18 * peak)[0]
    return float(r[min(alive[-1] + 1, r.size - 1)])


def _hankel(profile: RadialProfile, m: int, rho: float, shift: int) -> complex:
    """``(2 pi)^(m/2) int_0^inf r^(m-1) s(r) J_(nu+shift)(r rho) / (r rho)^nu dr``, ``nu = m/2 - 1``."""
    nu = m / 2 - 1
    mu = nu + shift
    c = (2 * np.pi) ** (m / 2)
    scale = profile.scale
    n = node_count(32)

    def integrand(r):
        return r ** (m - 1) * profile(r) * c * _bessel_ratio(mu, nu, r * rho)

    finite = np.isfinite(profile.decay)
    if finite:
        r1 = max(8 * scale, _EULER_THRESHOLD / rho if rho > 0 else np.inf)
        r1 = min(r1, 1e4 * scale)
    else:
        r1 = _support(profile, m)
    bulk = np.arange(0.0, min(8 * scale, r1), scale / 2)
    geo = 8 * scale * 1.5 ** np.arange(1, 64)
    edges = np.concatenate([bulk, geo[geo < r1], [r1]])
    if rho > 0:
        edges = np.concatenate([edges, bessel_zeros(mu, rho * r1) / rho])
    edges = np.unique(edges)
    x, w = panel_rule(edges, n)
    total = np.sum(w * integrand(x))
    if not finite:
        return complex(total)
    if rho * r1 >= _EULER_THRESHOLD:
        zs = bessel_zeros(mu, rho * r1, extra=_TAIL_PANELS + 1)
        tail_edges = np.concatenate([[r1], zs[zs > rho * r1][: _TAIL_PANELS + 1] / rho])
        x, w = panel_rule(tail_edges, n)
        pieces = (w * integrand(x)).reshape(-1, n).sum(axis=1)
        total += iterated_average(np.cumsum(pieces)[1:])
    else:
        t, wt = gauss_legendre(node_count(64))
        t = (1 + t) / 2
        wt = wt / 2
        total += np.sum(wt * r1 / t**2 * integrand(r1 / t))
    return complex(total)


def _check_decay(profile: RadialProfile, m: int):
    if not profile.decay > m:
        raise ValueError(
            f"profile decay r^-{profile.decay} is not integrable against r^(m-1) for m={m}; need decay > m"
        )


def radial_ft(profile: RadialProfile, m: int, rho) -> np.ndarray:
    """Fourier transform of ``x -> s(|x|)`` as a function of ``rho = |u|``."""
    if m < 2:
        raise ValueError("radial_ft needs m >= 2")
    _check_decay(profile, m)
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho < 0):
        raise ValueError("frequencies must be nonnegative")
    return np.array([_hankel(profile, m, float(p), 0) for p in rho])


@dataclass(frozen=True)
class AxialProfile:
    """Axial function ``P(r) + Q(r) x/r`` given by its two radial profiles."""

    scalar: RadialProfile
    radial: RadialProfile


@dataclass(frozen=True)
class AxialSpectrum:
    """Spectrum ``S(rho) + i (u/rho) V(rho)`` of an axial function."""

    rho: np.ndarray
    scalar_part: np.ndarray
    vector_part: np.ndarray

    def __post_init__(self):
        if self.rho.size > 1 and np.any(np.diff(self.rho) <= 0):
            raise ValueError("frequency grid must be strictly increasing")


def vector_ft(profile: RadialProfile, m: int, rho) -> np.ndarray:
    """``V(rho)`` such that the transform of ``Q(|x|) x/|x|`` is ``i (u/rho) V(rho)``."""
    _check_decay(profile, m)
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    return np.array([-_hankel(profile, m, float(p), 1) if p > 0 else 0j for p in rho])


def axial_spectrum(psi: AxialProfile, m: int, rho) -> AxialSpectrum:
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    return AxialSpectrum(rho, radial_ft(psi.scalar, m, rho), vector_ft(psi.radial, m, rho))
