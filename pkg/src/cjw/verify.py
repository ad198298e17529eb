"""Verification suites. Each returns a JSON-ready report ``{suite, cases, max_error, pass}``.

Every case compares library output against an independent oracle (closed
form, brute-force quadrature, or a different discretisation) and records the
error next to the tolerance it is held to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import clifford as cl
from .axial import (
    AxialPolynomial,
    WeightParams,
    axial_dirac,
    axial_eval,
    ck_extension,
    weight_coeffs,
    weight_dirac,
    weight_eval,
)
from .cwt import (
    WaveletDescriptor,
    cwt_forward,
    default_scales,
    grid_geometry,
    parseval_check,
    rasterize,
    reconstruct,
)
from .fractional import Func1D, HermiteBasis, fractional_derivative, fractional_integral, frft
from .jacobi import generate, moment_integral, rodrigues_residual
from .spectral import RadialProfile, radial_ft, sphere_kernel


@dataclass
class Report:
    suite: str
    cases: list = field(default_factory=list)

    def add(self, name: str, error: float, tol: float, ok: bool | None = None, **extra):
        error = float(error)
        passed = bool(error < tol) if ok is None else bool(ok)
        self.cases.append({"name": name, "error": error, "tol": float(tol), "pass": passed, **extra})

    def to_dict(self) -> dict:
        errs = [c["error"] for c in self.cases if np.isfinite(c["error"])]
        return {
            "suite": self.suite,
            "cases": self.cases,
            "max_error": max(errs) if errs else 0.0,
            "pass": all(c["pass"] for c in self.cases),
        }


def _rel(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1e-300)
    return float(np.max(np.abs(a - b)) / scale)


# --------------------------------------------------------------------------


def suite_algebra(count: int = 1000, seed: int = 0) -> dict:
    rep = Report("algebra")
    rng = np.random.default_rng(seed)
    for m in (2, 3, 4):
        one = cl.Multivector.scalar(m)
        worst = 0.0
        for j in range(1, m + 1):
            ej = cl.Multivector.blade(m, (j,))
            worst = max(worst, (ej * ej + one).norm())
            for k in range(j + 1, m + 1):
                ek = cl.Multivector.blade(m, (k,))
                worst = max(worst, (ej * ek + ek * ej).norm())
        rep.add(f"generators m={m}", worst, 1e-15, ok=worst == 0)
    per = [count // 3 + (1 if i < count % 3 else 0) for i in range(3)]
    for m, n in zip((2, 3, 4), per):
        size = 1 << m
        assoc = inv = vec = 0.0
        for _ in range(n):
            a, b, c = (cl.Multivector(m, rng.normal(size=size) + 1j * rng.normal(size=size)) for _ in range(3))
            lhs, rhs = (a * b) * c, a * (b * c)
            assoc = max(assoc, (lhs - rhs).norm() / max(lhs.norm(), 1e-300))
            for kind in ("conjugation", "inversion"):
                l2 = cl.anti_involution(a * b, kind)
                r2 = cl.anti_involution(b, kind) * cl.anti_involution(a, kind)
                inv = max(inv, (l2 - r2).norm() / max(l2.norm(), 1e-300))
            x, y = rng.normal(size=m), rng.normal(size=m)
            ex, ey = cl.embed_vector(x), cl.embed_vector(y)
            s = ex * ey + ey * ex
            target = cl.Multivector.scalar(m, -2 * np.dot(x, y))
            vec = max(vec, (s - target).norm() / max(2 * np.linalg.norm(x) * np.linalg.norm(y), 1e-300))
        rep.add(f"associativity m={m} ({n} triples)", assoc, 1e-12)
        rep.add(f"anti-involution law m={m}", inv, 1e-12)
        rep.add(f"vector anticommutator m={m}", vec, 1e-12)
    return rep.to_dict()


def _poly_field(p: AxialPolynomial, geom: cl.GridField) -> cl.GridField:
    x = geom.coords()
    val = axial_eval(p, x)
    r = np.linalg.norm(x, axis=-1)
    chans = {0: np.asarray(val.scalar, complex)}
    with np.errstate(invalid="ignore", divide="ignore"):
        for j in range(geom.m):
            chans[j + 1] = np.where(r > 0, np.asarray(val.radial) * x[..., j] / np.where(r > 0, r, 1), 0)
    return geom.with_channels(chans)


def _interior(arr: np.ndarray, k: int = 2) -> np.ndarray:
    return arr[tuple(slice(k, -k) for _ in range(arr.ndim))]


def _inner_box(geom: cl.GridField, half: float = 0.8) -> np.ndarray:
    """Mask of samples inside a fixed cube, so errors at different resolutions compare like for like."""
    return np.all(np.abs(geom.coords()) <= half + 1e-12, axis=-1)


def _fd_error(p: AxialPolynomial, n: int) -> float:
    m = p.m
    h = 2.0 / (n - 1)
    geom = cl.GridField(m, (h,) * m, (-1.0,) * m, {}, shape=(n,) * m)
    fd = cl.dirac_fd(_poly_field(p, geom))
    exact = _poly_field(axial_dirac(p), geom)
    blades = set(fd.channels) | set(exact.channels)
    box = _inner_box(geom)
    err = max(float(np.max(np.abs(fd.channel(b) - exact.channel(b))[box])) for b in blades)
    scale = max(float(np.max(np.abs(exact.channel(b))[box])) for b in blades)
    return err / max(scale, 1e-300)


def suite_derivatives(seed: int = 1) -> dict:
    rep = Report("derivatives")
    rng = np.random.default_rng(seed)
    for m, sizes in ((2, (41, 81)), (3, (21, 41))):
        for deg in (1, 2, 3, 4):
            p = AxialPolynomial(m, tuple(rng.normal(size=deg + 1)))
            e1, e2 = (_fd_error(p, n) for n in sizes)
            order = math.log2(e1 / e2) if e2 > 0 else float("inf")
            rep.add(f"dirac_fd vs exact, m={m} degree={deg}", e2, 5e-3, order=order)
            if deg >= 3:
                rep.add(f"dirac_fd order, m={m} degree={deg}", abs(order - 2), 0.3, order=order)
    # weight derivative against finite differences along a ray (equal exponents)
    for alpha in (-3.5, -1.0, 0.5, 2.0):
        w = WeightParams(alpha, alpha, 3)
        r = np.linspace(0.05, 3, 40)
        h = 1e-3
        s = lambda rr: np.asarray(weight_eval(w, np.stack([rr, 0 * rr, 0 * rr], -1)).scalar).real  # noqa: E731
        fd = (s(r - 2 * h) - 8 * s(r - h) + 8 * s(r + h) - s(r + 2 * h)) / (12 * h)
        val = weight_dirac(w, np.stack([r, 0 * r, 0 * r], -1))
        err = max(_rel(np.asarray(val.radial).real, fd), float(np.max(np.abs(val.scalar))))
        rep.add(f"weight_dirac radial vs ray FD, alpha=beta={alpha}", err, 1e-8)
    # weight derivative against the grid Dirac operator (unequal exponents)
    for alpha, beta in ((-2.5, -1.5), (1.3, -0.7)):
        errs = []
        for n in (41, 81):
            h = 2.0 / (n - 1)
            geom = cl.GridField(2, (h, h), (-1.0, -1.0), {}, shape=(n, n))
            x = geom.coords()
            r = np.linalg.norm(x, axis=-1)
            w = WeightParams(alpha, beta, 2)
            val = weight_eval(w, x)
            with np.errstate(invalid="ignore", divide="ignore"):
                unit = np.where(r[..., None] > 0, x / np.where(r > 0, r, 1)[..., None], 0)
            f = geom.with_channels({0: val.scalar, 1: val.radial * unit[..., 0], 2: val.radial * unit[..., 1]})
            fd = cl.dirac_fd(f)
            d = weight_dirac(w, x)
            ref = {0: d.scalar, 1: d.radial * unit[..., 0], 2: d.radial * unit[..., 1]}
            box = _inner_box(geom)
            e = max(float(np.max(np.abs(fd.channel(b) - ref.get(b, 0))[box])) for b in range(4))
            errs.append(e / float(np.max(np.abs(np.asarray(d.magnitude()))[box])))
        rep.add(f"weight_dirac vs grid FD, alpha={alpha} beta={beta}", errs[-1], 5e-3,
                order=math.log2(errs[0] / errs[1]))
    # monogenicity of the CK-extension
    for deg in (1, 2, 3):
        g = AxialPolynomial(2, tuple(rng.normal(size=deg + 1)))
        n, h0 = 41, 1e-4
        h = 2.0 / (n - 1)
        geom = cl.GridField(2, (h, h), (-1.0, -1.0), {}, shape=(n, n))
        x = geom.coords()
        r = np.linalg.norm(x, axis=-1)
        with np.errstate(invalid="ignore", divide="ignore"):
            unit = np.where(r[..., None] > 0, x / np.where(r > 0, r, 1)[..., None], 0)

        def field_at(x0):
            v = ck_extension(g, x0, x)
            return {0: np.asarray(v.scalar), 1: v.radial * unit[..., 0], 2: v.radial * unit[..., 1]}

        x0 = 0.3
        plus, minus = field_at(x0 + h0), field_at(x0 - h0)
        dx = cl.dirac_fd(geom.with_channels(field_at(x0)))
        total = max(
            float(np.max(np.abs(_interior((plus[b] - minus[b]) / (2 * h0) + dx.channel(b))))) for b in range(3)
        )
        scale = max(float(np.max(np.abs(_interior(dx.channel(b))))) for b in range(4))
        rep.add(f"CK-extension monogenic, degree={deg}", total / max(scale, 1e-300), 5e-3)
    return rep.to_dict()


def g2_closed_form(alpha, beta, m):
    return [
        (alpha - beta) ** 2 - m * (alpha + beta),
        (alpha - beta) * (2 * alpha + 2 * beta - 2),
        (alpha + beta) * (alpha + beta - 2 + m),
    ]


def suite_recursion_closed_forms(seed: int = 2) -> dict:
    rep = Report("recursion-closed-forms")
    rng = np.random.default_rng(seed)
    worst = [0.0, 0.0, 0.0]
    for _ in range(50):
        alpha, beta = rng.uniform(-10, 10, 2)
        m = int(rng.integers(1, 9))
        w = WeightParams(alpha, beta, m)
        forms = ([1.0], [-(alpha - beta), -(alpha + beta)], g2_closed_form(alpha, beta, m))
        for ell, ref in enumerate(forms):
            got = np.zeros(3, complex)
            c = generate(ell, w).poly.array()
            got[: c.size] = c
            want = np.zeros(3)
            want[: len(ref)] = ref
            worst[ell] = max(worst[ell], float(np.max(np.abs(got - want) / (1 + np.abs(want)))))
    for ell in range(3):
        rep.add(f"G_{ell} closed form (50 parameter draws)", worst[ell], 1e-12)
    lemma = 0.0
    for _ in range(50):
        alpha, beta = rng.uniform(-10, 10, 2)
        a = weight_coeffs(WeightParams(alpha, beta, 2), 31).array()
        b1 = weight_coeffs(WeightParams(alpha, beta - 1, 2), 31).array()
        a1 = weight_coeffs(WeightParams(alpha - 1, beta, 2), 31).array()
        n = np.arange(31)
        lhs = (n + 1) * a[1:32]
        rhs = beta * b1[:31] - alpha * a1[:31]
        scale = np.abs(beta * b1[:31]) + np.abs(alpha * a1[:31]) + 1e-300
        lemma = max(lemma, float(np.max(np.abs(lhs - rhs) / scale)))
    rep.add("coefficient recursion lemma n<=30 (50 draws)", lemma, 1e-11)
    return rep.to_dict()


def _random_points(rng, m: int, count: int, rmax: float = 3.0) -> np.ndarray:
    d = rng.normal(size=(count, m))
    d /= np.linalg.norm(d, axis=1)[:, None]
    return d * rng.uniform(0, rmax, count)[:, None]


def suite_rodrigues(seed: int = 3, draws: int = 20) -> dict:
    rep = Report("rodrigues")
    rng = np.random.default_rng(seed)
    for m in (2, 3):
        for ell in (1, 2, 3):
            worst, arg = 0.0, None
            for _ in range(draws):
                alpha, beta = rng.uniform(-10, -2, 2)
                res = rodrigues_residual(ell, WeightParams(alpha, beta, m), _random_points(rng, m, 100))
                if not res <= worst:
                    worst, arg = res, (round(float(alpha), 6), round(float(beta), 6))
            rep.add(f"ell={ell} m={m} random (alpha, beta)", worst, 1e-9, worst_params=arg)
            eq = max(
                rodrigues_residual(ell, WeightParams(a, a, m), _random_points(rng, m, 100))
                for a in rng.uniform(-10, -2, 5)
            )
            rep.add(f"ell={ell} m={m} alpha=beta", eq, 1e-9)
    return rep.to_dict()


MOMENT_CASES = ((2, 1, -4.0, -4.0), (2, 2, -6.0, -6.0))


def suite_moments() -> dict:
    rep = Report("moments")
    for m, ell, alpha, beta in MOMENT_CASES:
        kmax = min(ell, int(-(m + ell + alpha + beta)))
        for k in range(kmax + 1):
            res = moment_integral(k, ell, WeightParams(alpha, beta, m))
            rep.add(f"k={k} (m={m}, ell={ell}, alpha={alpha}, beta={beta})", res.relative(), 1e-8,
                    scalar=res.scalar.real, vector=abs(res.vector))
    res = moment_integral(0, 0, WeightParams(-2, -2, 2))
    rep.add("k=0 t=0 alpha=beta=-2 m=2 equals pi", abs(res.scalar - np.pi) / np.pi, 1e-10)
    return rep.to_dict()


def suite_fractional(seed: int = 4) -> dict:
    rep = Report("fractional")
    rng = np.random.default_rng(seed)
    poly = Func1D(lambda s: 1 + 2 * s - 0.5 * s**2)
    worst = 0.0
    for _ in range(20):
        a, b = rng.uniform(0.05, 2, 2)
        t = 1.3
        inner = Func1D(lambda tau, a=a: np.array([fractional_integral(poly, a, 0.0, ti) for ti in np.atleast_1d(tau)]))
        lhs = fractional_integral(inner, b, 0.0, t)
        # closed form for polynomials: J^g t^k = k!/Gamma(k+g+1) t^(k+g)
        g = a + b
        rhs = sum(c * math.factorial(k) / math.gamma(k + g + 1) * t ** (k + g) for k, c in enumerate((1, 2, -0.5)))
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    rep.add("RL semigroup (20 random orders)", worst, 1e-7)
    f = Func1D(lambda s: s, (lambda s: np.ones_like(s),))
    err = max(abs(fractional_derivative(f, 0.5, 0.0, t, "caputo") - 2 * math.sqrt(t / math.pi)) / (2 * math.sqrt(t / math.pi))
              for t in (0.3, 1.0, 2.5))
    rep.add("Caputo D^1/2 t = 2 sqrt(t/pi)", err, 1e-6)
    const = Func1D(lambda s: 3.0 + 0 * s)
    err = max(abs(fractional_derivative(const, q, 0.0, 1.7, "caputo")) for q in (0.3, 0.5, 1.5, 2.2))
    rep.add("Caputo of a constant", err, 1e-12)
    one = Func1D(lambda s: np.ones_like(s))
    err = 0.0
    for q in (0.25, 0.5, 1.0, 1.75):
        for t in (1.5, 3.0, 10.0):
            ref = math.log(t) ** q / math.gamma(q + 1)
            err = max(err, abs(fractional_integral(one, q, 1.0, t, "hadamard") - ref) / ref)
    rep.add("Hadamard integral of 1", err, 1e-7)
    err = max(abs(fractional_derivative(one, 0.5, 0.0, t) - t**-0.5 / math.gamma(0.5)) * math.gamma(0.5) * t**0.5
              for t in (0.5, 1.0, 2.0))
    rep.add("RL D^1/2 of 1", err, 1e-6)
    return rep.to_dict()


def hermite_reference(n: int, x) -> np.ndarray:
    """Orthonormal Hermite function from the physicists' polynomial, computed in log space."""
    x = np.asarray(x, dtype=float)
    logc = -0.5 * (n * math.log(2) + math.lgamma(n + 1) + 0.5 * math.log(math.pi))
    return special.eval_hermite(n, x) * np.exp(logc - x**2 / 2)


def suite_frft(seed: int = 5) -> dict:
    rep = Report("frft")
    basis = HermiteBasis()
    x = basis.grid
    worst = 0.0
    for n in range(21):
        h = hermite_reference(n, x)
        out = frft(h, np.pi / 2, basis).values
        worst = max(worst, _rel(out, (-1j) ** n * h))
    rep.add("F_{pi/2} H_n = (-i)^n H_n, n<=20", worst, 1e-7)
    rng = np.random.default_rng(seed)
    c = (rng.normal(size=21) + 1j * rng.normal(size=21)) * np.exp(-0.1 * np.arange(21))
    f = sum(ci * hermite_reference(n, x) for n, ci in enumerate(c))
    worst_add = worst_norm = 0.0
    norm = np.sqrt(np.sum(np.abs(f) ** 2) * basis.dx)
    for a, b in rng.uniform(-np.pi, np.pi, (5, 2)):
        ab = frft(frft(f, a, basis).values, b, basis).values
        worst_add = max(worst_add, _rel(ab, frft(f, a + b, basis).values))
        out = frft(f, a, basis).values
        worst_norm = max(worst_norm, abs(np.sqrt(np.sum(np.abs(out) ** 2) * basis.dx) - norm) / norm)
    rep.add("additivity F_a F_b = F_{a+b}", worst_add, 1e-7)
    rep.add("norm preservation", worst_norm, 1e-8)
    on_grid = frft(f, np.pi / 2, basis).values
    direct_grid = np.exp(-1j * np.outer(x, x)) @ f * basis.dx / math.sqrt(2 * math.pi)
    rep.add("F_{pi/2} vs direct Fourier sum", _rel(on_grid, direct_grid), 1e-6)
    return rep.to_dict()


def _sphere_direct(r: float, rho: float, m: int, rng) -> float:
    w = rng.normal(size=m)
    w /= np.linalg.norm(w)
    if m == 2:
        th = np.linspace(0, 2 * np.pi, 512, endpoint=False)
        xi = np.stack([np.cos(th), np.sin(th)], -1)
        wt = np.full(th.size, 2 * np.pi / th.size)
    else:
        ct, wc = np.polynomial.legendre.leggauss(96)
        ph = np.linspace(0, 2 * np.pi, 192, endpoint=False)
        CT, PH = np.meshgrid(ct, ph, indexing="ij")
        st = np.sqrt(1 - CT**2)
        xi = np.stack([st * np.cos(PH), st * np.sin(PH), CT], -1).reshape(-1, 3)
        wt = (wc[:, None] * np.full(ph.size, 2 * np.pi / ph.size)[None, :]).ravel()
    return complex(np.sum(wt * np.exp(-1j * r * rho * (xi @ w))))


def spectrum_fft_error(wd: WaveletDescriptor, band: float = 2.0) -> float:
    """Low-band gap between the quadrature spectrum and the FFT of the rasterized wavelet."""
    geom = grid_geometry(wd.m, 128, 8.0)
    psi = rasterize(wd, geom)
    h = geom.spacing[0]
    xi = 2 * np.pi * np.fft.fftfreq(128, h)
    K = np.stack(np.meshgrid(xi, xi, indexing="ij"), -1)
    R = np.linalg.norm(K, axis=-1)
    phase = np.exp(-1j * (K @ np.asarray(geom.origin)))
    F = [np.fft.fft2(psi.channel(k)) * h * h * phase for k in range(3)]
    sel = (R > 0) & (R <= band)
    rho, inv = np.unique(R[sel], return_inverse=True)
    spec = wd.spectrum(rho)
    S, V = spec.scalar_part[inv], spec.vector_part[inv]
    ref = [S, 1j * K[sel][:, 0] / R[sel] * V, 1j * K[sel][:, 1] / R[sel] * V]
    err = max(float(np.max(np.abs(F[k][sel] - ref[k]))) for k in range(3))
    return err / max(float(np.max(np.abs(r))) for r in ref)


def suite_spectrum(seed: int = 6) -> dict:
    rep = Report("spectrum")
    rng = np.random.default_rng(seed)
    for m in (2, 3):
        worst = 0.0
        for _ in range(20):
            r, rho = rng.uniform(0, 4, 2)
            direct = _sphere_direct(r, rho, m, rng)
            worst = max(worst, abs(sphere_kernel(r, rho, m) - direct) / max(abs(direct), 1e-300))
        rep.add(f"sphere kernel vs direct quadrature, m={m}", worst, 1e-6)
    for m in (2, 3):
        for c in (0.5, 1.0, 2.0):
            rho = np.linspace(0, 4, 17)
            got = radial_ft(RadialProfile(lambda r, c=c: np.exp(-c * r**2)), m, rho)
            ref = (np.pi / c) ** (m / 2) * np.exp(-(rho**2) / (4 * c))
            rep.add(f"Gaussian transform m={m} c={c}", float(np.max(np.abs(got - ref) / ref)), 1e-7)
    for wd in (WaveletDescriptor(1, -4, -4, 2), WaveletDescriptor(2, -6, -6, 2)):
        rep.add(f"spectrum vs 128^2 FFT, ell={wd.ell} alpha={wd.alpha} beta={wd.beta}", spectrum_fft_error(wd), 1e-3)
    return rep.to_dict()


ROUNDTRIP_WAVELET = WaveletDescriptor(2, -6.0, -6.0, 2)
ROUNDTRIP_SIGMA = 0.25


def unit_gaussian(geom: cl.GridField, sigma: float, center=None) -> cl.GridField:
    x = geom.coords()
    c = np.zeros(geom.m) if center is None else np.asarray(center, dtype=float)
    f = np.exp(-np.sum((x - c) ** 2, axis=-1) / (2 * sigma**2))
    f = f / math.sqrt(np.sum(f**2) * geom.cell_volume)
    return geom.with_channels({0: f})


def suite_parseval(counts=(8, 16, 32)) -> dict:
    rep = Report("parseval")
    geom = grid_geometry(2, 128, 8.0)
    f = unit_gaussian(geom, ROUNDTRIP_SIGMA)
    gaps = []
    for count in counts:
        res = parseval_check(f, f, ROUNDTRIP_WAVELET, default_scales(geom, count))
        gaps.append(res.gap)
        rep.add(f"unit Gaussian gap, {count} scales", res.gap, 0.05 if count == counts[-1] else 1.0)
    rep.add("gap decreases under scale refinement", 0.0, 1.0, ok=all(b < a for a, b in zip(gaps, gaps[1:])), gaps=gaps)
    zero = geom.with_channels({0: np.zeros(geom.shape)})
    res = parseval_check(f, zero, ROUNDTRIP_WAVELET, default_scales(geom, 8))
    rep.add("g = 0 gives lhs = rhs = 0", abs(res.lhs) + abs(res.rhs), 1e-300, ok=res.lhs == 0 and res.rhs == 0)
    return rep.to_dict()


def roundtrip_error(f: cl.GridField, wd: WaveletDescriptor, scales) -> tuple[float, float]:
    rec = reconstruct(cwt_forward(f, wd, scales))
    diff = rec.field.channel(0) - f.channel(0)
    return float(np.linalg.norm(diff) / np.linalg.norm(f.channel(0))), rec.residual


def suite_roundtrip(counts=(8, 16, 32)) -> dict:
    rep = Report("roundtrip")
    geom = grid_geometry(2, 128, 8.0)
    f = unit_gaussian(geom, ROUNDTRIP_SIGMA)
    errs = []
    for count in counts:
        err, resid = roundtrip_error(f, ROUNDTRIP_WAVELET, default_scales(geom, count))
        errs.append(err)
        rep.add(f"unit Gaussian round trip, {count} scales", err, 0.05 if count == counts[-1] else 1.0,
                vector_residual=resid)
    rep.add("error decreases under scale refinement", 0.0, 1.0, ok=all(b < a for a, b in zip(errs, errs[1:])), errors=errs)
    return rep.to_dict()


SUITES = {
    "algebra": suite_algebra,
    "derivatives": suite_derivatives,
    "recursion-closed-forms": suite_recursion_closed_forms,
    "rodrigues": suite_rodrigues,
    "moments": suite_moments,
    "fractional": suite_fractional,
    "frft": suite_frft,
    "spectrum": suite_spectrum,
    "parseval": suite_parseval,
    "roundtrip": suite_roundtrip,
}


def run_suite(name: str) -> dict:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name]()
