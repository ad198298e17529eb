"""Spheroidal mother wavelets, admissibility, and the continuous wavelet transform on grids."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicSpline

from .axial import AxialValue, WeightParams, weight_eval_radius
from .clifford import GridField, layout
from .jacobi import JacobiPolynomial, generate
from .quad import half_line_rule, node_count
from .spectral import AxialProfile, AxialSpectrum, RadialProfile, axial_spectrum


@dataclass(frozen=True)
class WaveletDescriptor:
    """Mother wavelet ``G_ell^{alpha+ell, beta+ell}(x) w_{alpha,beta}(x)`` on R^m."""

    ell: int
    alpha: float
    beta: float
    m: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError(f"ell must be at least 1, got {self.ell}")
        if self.m < 2:
            raise ValueError(f"the wavelet transform needs m >= 2, got {self.m}")
        if not self.alpha + self.beta + self.m + self.ell < 0:
            raise ValueError(
                f"need alpha + beta + m + ell < 0 for a zero-mean integrable wavelet, "
                f"got {self.alpha + self.beta + self.m + self.ell}"
            )
        if not 2 * self.ell + self.alpha + self.beta + self.m < 1:
            raise ValueError(
                f"need 2 ell + alpha + beta + m < 1, got {2 * self.ell + self.alpha + self.beta + self.m}"
            )

    @property
    def params(self) -> WeightParams:
        return WeightParams(self.alpha, self.beta, self.m)

    @cached_property
    def jacobi(self) -> JacobiPolynomial:
        return generate(self.ell, WeightParams(self.alpha + self.ell, self.beta + self.ell, self.m))

    @property
    def decay(self) -> float:
        """Exponent ``d`` with ``|psi(x)| = O(|x|^-d)``."""
        return -(self.ell + self.alpha + self.beta)

    def at_radius(self, r) -> AxialValue:
        return self.jacobi.at_radius(r) * weight_eval_radius(self.params, r)

    @cached_property
    def profile(self) -> AxialProfile:
        return AxialProfile(
            RadialProfile(lambda r: self.at_radius(r).scalar, self.decay),
            RadialProfile(lambda r: self.at_radius(r).radial, self.decay),
        )

    def spectrum(self, rho) -> AxialSpectrum:
        return axial_spectrum(self.profile, self.m, rho)

    @cached_property
    def admissibility(self) -> float:
        return admissibility_from_profile(self.profile, self.m)

    @cached_property
    def spectrum_table(self) -> "SpectrumTable":
        return SpectrumTable.build(self.profile, self.m)


def mother_eval(wd: WaveletDescriptor, x) -> AxialValue:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != wd.m:
        raise ValueError(f"points must have a trailing axis of length {wd.m}")
    return wd.at_radius(np.linalg.norm(x, axis=-1))


def _axial_channels(val: AxialValue, y: np.ndarray, r: np.ndarray, amp: float, m: int) -> dict:
    out = {0: amp * np.asarray(val.scalar, complex)}
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(r[..., None] > 0, y / np.where(r > 0, r, 1)[..., None], 0.0)
    for j in range(m):
        out[j + 1] = amp * np.asarray(val.radial, complex) * unit[..., j]
    return out


def rasterize(wd: WaveletDescriptor, geometry: GridField, a: float = 1.0, b=None) -> GridField:
    """Sample ``a^(-m/2) psi((x - b)/a)`` on the grid of ``geometry`` (scalar and vector channels)."""
    if geometry.m != wd.m:
        raise ValueError(f"grid dimension {geometry.m} does not match wavelet dimension {wd.m}")
    if not a > 0:
        raise ValueError("scale must be positive")
    if a < 4 * max(geometry.spacing):
        warnings.warn(f"scale {a} is below four grid spacings; the wavelet is under-resolved", RuntimeWarning)
    b = np.zeros(wd.m) if b is None else np.asarray(b, dtype=float)
    y = (geometry.coords() - b) / a
    r = np.linalg.norm(y, axis=-1)
    return geometry.with_channels(_axial_channels(wd.at_radius(r), y, r, a ** (-wd.m / 2), wd.m))


# --------------------------------------------------------------------------
# admissibility


def admissibility_from_profile(psi: AxialProfile, m: int, nodes: int | None = None) -> float:
    """``int_0^inf (|S|^2 + |V|^2) d rho / rho`` for the spectrum ``S + i (u/rho) V``."""
    probe = axial_spectrum(psi, m, [1e-8, 1e-6, 0.5, 1.0, 2.0, 100.0, 200.0, 400.0])
    power = np.abs(probe.scalar_part) ** 2 + np.abs(probe.vector_part) ** 2
    peak = power.max()
    if peak == 0:
        return 0.0
    if power[0] > 1e-10 * peak:
        raise ValueError("admissibility integral diverges at rho -> 0: the wavelet does not have zero mean")
    if power[-1] >= power[-3] and power[-1] > 1e-12 * peak:
        raise ValueError("admissibility integral diverges at rho -> inf: the spectrum does not decay")
    rho, w = half_line_rule(nodes or node_count(64))
    spec = axial_spectrum(psi, m, rho)
    power = np.abs(spec.scalar_part) ** 2 + np.abs(spec.vector_part) ** 2
    return float(np.sum(w * power / rho))


def admissibility(wd: WaveletDescriptor, nodes: int | None = None) -> float:
    if nodes is None:
        return wd.admissibility
    return admissibility_from_profile(wd.profile, wd.m, nodes)


@dataclass(frozen=True)
class SpectrumTable:
    """Cubic-spline interpolant of the wavelet spectrum on ``[0, rho_max]``; zero beyond."""

    rho_max: float
    scalar: CubicSpline
    vector: CubicSpline

    @classmethod
    def build(cls, psi: AxialProfile, m: int, points: int = 513) -> "SpectrumTable":
        coarse = np.geomspace(0.05, 2000.0, 48)
        spec = axial_spectrum(psi, m, coarse)
        mag = np.hypot(np.abs(spec.scalar_part), np.abs(spec.vector_part))
        alive = np.nonzero(mag > 1e-13 * mag.max())[0]
        rho_max = float(coarse[min(alive[-1] + 1, coarse.size - 1)])
        # quadratic spacing: the spectrum varies fastest near the origin
        rho = rho_max * np.linspace(0.0, 1.0, points) ** 2
        spec = axial_spectrum(psi, m, rho)
        return cls(rho_max, CubicSpline(rho, spec.scalar_part), CubicSpline(rho, spec.vector_part))

    def __call__(self, rho) -> tuple[np.ndarray, np.ndarray]:
        rho = np.asarray(rho, dtype=float)
        inside = rho <= self.rho_max
        s = np.where(inside, self.scalar(np.minimum(rho, self.rho_max)), 0)
        v = np.where(inside, self.vector(np.minimum(rho, self.rho_max)), 0)
        return s, v


# --------------------------------------------------------------------------
# transform


def default_scales(geometry: GridField, count: int = 32) -> np.ndarray:
    h = min(geometry.spacing)
    extent = max(n * s for n, s in zip(geometry.shape, geometry.spacing))
    return np.geomspace(h / 8, 4 * extent, count)


def log_trapezoid_weights(scales) -> np.ndarray:
    """Trapezoid weights in ``log a``; a single scale gets weight one."""
    u = np.log(np.asarray(scales, dtype=float))
    if u.size == 1:
        return np.ones(1)
    w = np.zeros_like(u)
    d = np.diff(u)
    w[:-1] += d / 2
    w[1:] += d / 2
    return w


def grid_geometry(m: int = 2, n: int = 128, half_width: float = 8.0) -> GridField:
    """Empty field describing the cube ``[-half_width, half_width)^m`` with ``n`` samples per axis."""
    h = 2 * half_width / n
    return GridField(m, (h,) * m, (-half_width,) * m, {}, shape=(n,) * m)


@dataclass(frozen=True)
class CwtResult:
    scales: np.ndarray
    coeffs: tuple[GridField, ...]
    wavelet: WaveletDescriptor
    kernel: str = "spectral"
    pad: int = 4

    def __post_init__(self):
        if self.scales.size > 1 and np.any(np.diff(self.scales) <= 0):
            raise ValueError("scales must be strictly increasing")
        if len(self.coeffs) != self.scales.size:
            raise ValueError("one coefficient field per scale is required")

    @property
    def geometry(self) -> GridField:
        c = self.coeffs[0]
        return GridField(c.m, c.spacing, c.origin, {}, shape=c.shape)


class _FourierGrid:
    def __init__(self, geometry: GridField, pad: int):
        if pad < 1:
            raise ValueError("pad factor must be at least 1")
        self.geometry = geometry
        self.m = geometry.m
        self.shape = tuple(pad * n for n in geometry.shape)
        self.crop = tuple(slice(0, n) for n in geometry.shape)
        freqs = [2 * np.pi * np.fft.fftfreq(P, d=h) for P, h in zip(self.shape, geometry.spacing)]
        self.xi = np.stack(np.meshgrid(*freqs, indexing="ij"), axis=-1)
        self.rho = np.linalg.norm(self.xi, axis=-1)
        offsets = [h * np.where(np.arange(P) < P // 2, np.arange(P), np.arange(P) - P) for P, h in zip(self.shape, geometry.spacing)]
        self.y = np.stack(np.meshgrid(*offsets, indexing="ij"), axis=-1)
        self.cell = geometry.cell_volume

    def fft(self, arr):
        return np.fft.fftn(arr, s=self.shape, axes=tuple(range(len(self.shape))))

    def ifft_cropped(self, arr):
        return np.fft.ifftn(arr)[self.crop]


def _negate_frequency(arr: np.ndarray) -> np.ndarray:
    axes = tuple(range(arr.ndim))
    return np.roll(np.flip(arr, axis=axes), 1, axis=axes)


def _kernel_spectra(wd: WaveletDescriptor, a: float, grid: _FourierGrid, kernel: str) -> list[np.ndarray]:
    """Fourier transforms of the channels of ``a^(-m/2) psi(y/a)`` on the padded frequency grid."""
    m = wd.m
    if kernel == "spectral":
        s, v = wd.spectrum_table(a * grid.rho)
        amp = a ** (m / 2)
        with np.errstate(invalid="ignore", divide="ignore"):
            unit = np.where(grid.rho[..., None] > 0, grid.xi / np.where(grid.rho > 0, grid.rho, 1)[..., None], 0.0)
        return [amp * s] + [amp * 1j * unit[..., j] * v for j in range(m)]
    if kernel == "spatial":
        if a < 2 * max(grid.geometry.spacing):
            raise ValueError("the spatial kernel needs scales of at least two grid spacings")
        y = grid.y / a
        r = np.linalg.norm(y, axis=-1)
        chans = _axial_channels(wd.at_radius(r), y, r, a ** (-m / 2), m)
        return [np.fft.fftn(chans[k]) * grid.cell for k in range(m + 1)]
    raise ValueError(f"unknown kernel {kernel!r}; use 'spectral' or 'spatial'")


def _scalar_input(f: GridField) -> np.ndarray:
    for blade, values in f.channels.items():
        if blade != 0 and np.any(values != 0):
            raise ValueError("cwt_forward analyses scalar fields only; found a non-scalar channel")
    return f.channel(0)


def cwt_forward(f: GridField, wd: WaveletDescriptor, scales=None, kernel: str = "spectral", pad: int = 4) -> CwtResult:
    """``C(a, b) = int psi^a_b(x) conj(f(x)) dV(x)`` for every scale and every grid point ``b``."""
    if f.m != wd.m:
        raise ValueError(f"field dimension {f.m} does not match wavelet dimension {wd.m}")
    scales = default_scales(f) if scales is None else np.asarray(scales, dtype=float)
    if np.any(scales <= 0):
        raise ValueError("scales must be positive")
    scales = np.sort(scales)
    grid = _FourierGrid(f, pad)
    G = grid.fft(np.conj(_scalar_input(f)))
    out = []
    for a in scales:
        spectra = _kernel_spectra(wd, a, grid, kernel)
        chans = {k: grid.ifft_cropped(G * _negate_frequency(K)) for k, K in enumerate(spectra)}
        out.append(f.with_channels(chans))
    return CwtResult(scales, tuple(out), wd, kernel, pad)


@dataclass(frozen=True)
class Reconstruction:
    field: GridField
    residual: float
    full: GridField


def reconstruct(cw: CwtResult, wd: WaveletDescriptor | None = None) -> Reconstruction:
    """Discrete inverse ``(1/A) sum_a w_a a^-m sum_b psi^a_b(y) conj(C(a, b))``.

    The Clifford product is carried out in full; the scalar part is the
    reconstruction and ``residual`` is the norm of the remaining grades
    relative to the scalar part.
    """
    wd = wd or cw.wavelet
    if wd != cw.wavelet:
        raise ValueError("coefficients were computed with a different wavelet")
    A = admissibility(wd)
    if not A > 0:
        raise ValueError("admissibility constant is not positive")
    geom = cw.geometry
    grid = _FourierGrid(geom, cw.pad)
    lay = layout(wd.m)
    conj_sign = [1.0] + [-1.0] * wd.m
    acc: dict[int, np.ndarray] = {}
    for a, w, c in zip(cw.scales, log_trapezoid_weights(cw.scales), cw.coeffs):
        spectra = _kernel_spectra(wd, a, grid, cw.kernel)
        D = [conj_sign[q] * grid.fft(np.conj(c.channel(q))) for q in range(wd.m + 1)]
        factor = w * a ** (-wd.m)
        for p in range(wd.m + 1):
            for q in range(wd.m + 1):
                t = int(lay.target[p, q])
                term = factor * lay.sign[p, q] * spectra[p] * D[q]
                acc[t] = acc[t] + term if t in acc else term
    chans = {t: grid.ifft_cropped(v) / A for t, v in acc.items()}
    full = geom.with_channels(chans)
    scalar = geom.with_channels({0: chans.get(0, np.zeros(geom.shape, complex))})
    rest = sum(float(np.sum(np.abs(v) ** 2)) for t, v in chans.items() if t != 0)
    base = float(np.sum(np.abs(scalar.channel(0)) ** 2))
    residual = float(np.sqrt(rest / base)) if base > 0 else 0.0
    return Reconstruction(scalar, residual, full)


@dataclass(frozen=True)
class ParsevalResult:
    lhs: complex
    rhs: complex
    gap: float


def coefficient_inner(cf: CwtResult, cg: CwtResult) -> complex:
    """``(1/A) sum_a w_a a^-m sum_b Sc[C_f conj(C_g)] h^m``."""
    A = admissibility(cf.wavelet)
    total = 0j
    for a, w, x, y in zip(cf.scales, log_trapezoid_weights(cf.scales), cf.coeffs, cg.coeffs):
        s = sum(np.sum(x.channel(k) * np.conj(y.channel(k))) for k in range(cf.wavelet.m + 1))
        total += w * a ** (-cf.wavelet.m) * s * x.cell_volume
    return total / A


def parseval_check(f: GridField, g: GridField, wd: WaveletDescriptor, scales=None, kernel: str = "spectral",
                   pad: int = 4) -> ParsevalResult:
    """Compare the coefficient-space inner product with ``<f, g> = sum f conj(g) h^m``.

    The gap is ``|lhs - rhs| / (|f| |g|)``. The transform conjugates its
    input, so for complex fields the coefficient side equals ``conj(<f, g>)``;
    real fields are unaffected.
    """
    if not f.congruent(g):
        raise ValueError("f and g must live on the same grid")
    scales = default_scales(f) if scales is None else np.sort(np.asarray(scales, dtype=float))
    if np.log10(scales[-1] / scales[0]) < 3:
        warnings.warn("scales span fewer than three decades; the Parseval sum is truncated", RuntimeWarning)
    cf = cwt_forward(f, wd, scales, kernel, pad)
    cg = cf if g is f else cwt_forward(g, wd, scales, kernel, pad)
    lhs = coefficient_inner(cf, cg)
    rhs = complex(np.sum(f.channel(0) * np.conj(g.channel(0))) * f.cell_volume)
    denom = f.norm() * g.norm()
    gap = float(abs(lhs - rhs) / denom) if denom > 0 else float(abs(lhs - rhs))
    return ParsevalResult(lhs, rhs, gap)
