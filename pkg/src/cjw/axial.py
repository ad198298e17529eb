"""Axial functions: polynomials and power-type weights in the vector variable x.

Every function handled here has the form ``A(r) + B(r) x/r`` with ``r = |x|``.
Such functions form a commutative algebra isomorphic to the complex numbers
under ``x <-> i r``: a series ``sum c_n x^n`` evaluated at ``x`` corresponds
to ``F(z) = sum c_n z^n`` at ``z = i r``, with scalar part ``(F(ir) + F(-ir))/2``
and radial part ``(F(ir) - F(-ir))/(2i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly

from .clifford import Multivector, embed_vector


@dataclass(frozen=True)
class AxialPolynomial:
    """``sum_n coeffs[n] x^n`` in the vector variable of R^m."""

    m: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"dimension must be positive, got {self.m}")
        c = [complex(v) for v in np.atleast_1d(np.asarray(self.coeffs, dtype=complex))]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0j]
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, m: int, n: int, value: complex = 1.0) -> "AxialPolynomial":
        c = [0j] * (n + 1)
        c[n] = complex(value)
        return cls(m, tuple(c))

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def _same_dim(self, other: "AxialPolynomial"):
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "AxialPolynomial") -> "AxialPolynomial":
        self._same_dim(other)
        a, b = self.array(), other.array()
        n = max(a.size, b.size)
        return AxialPolynomial(self.m, tuple(np.pad(a, (0, n - a.size)) + np.pad(b, (0, n - b.size))))

    def __neg__(self) -> "AxialPolynomial":
        return AxialPolynomial(self.m, tuple(-self.array()))

    def __sub__(self, other: "AxialPolynomial") -> "AxialPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AxialPolynomial):
            return axial_mul(self, other)
        return AxialPolynomial(self.m, tuple(self.array() * complex(other)))

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "AxialPolynomial":
        """Multiply by ``x**k``."""
        return AxialPolynomial(self.m, tuple(np.concatenate([np.zeros(k, complex), self.array()])))

    def to_csv(self) -> str:
        parts = [str(self.m), str(len(self.coeffs) - 1)]
        for c in self.coeffs:
            parts += [repr(float(c.real)), repr(float(c.imag))]
        return ",".join(parts)

    @classmethod
    def from_csv(cls, line: str) -> "AxialPolynomial":
        fields = line.strip().split(",")
        m, n = int(fields[0]), int(fields[1])
        vals = [float(v) for v in fields[2:]]
        if len(vals) != 2 * (n + 1):
            raise ValueError(f"expected {2 * (n + 1)} values after the header, got {len(vals)}")
        return cls(m, tuple(complex(vals[2 * i], vals[2 * i + 1]) for i in range(n + 1)))


@dataclass(frozen=True)
class WeightParams:
    """Exponents of ``(1 - x)^alpha (1 + x)^beta`` on R^m."""

    alpha: float
    beta: float
    m: int

    def swapped(self) -> "WeightParams":
        return WeightParams(self.beta, self.alpha, self.m)

    def shifted(self, da: float, db: float) -> "WeightParams":
        return WeightParams(self.alpha + da, self.beta + db, self.m)


@dataclass(frozen=True)
class AxialValue:
    """``scalar + radial * x/r`` at radius ``r``; fields may be arrays of equal shape."""

    scalar: np.ndarray | complex
    radial: np.ndarray | complex
    r: np.ndarray | float

    @classmethod
    def from_model(cls, fp, fm, r) -> "AxialValue":
        """Build from the complex model values ``F(ir)`` and ``F(-ir)``."""
        fp = np.asarray(fp, dtype=complex)
        fm = np.asarray(fm, dtype=complex)
        radial = np.where(np.asarray(r) > 0, (fp - fm) / 2j, 0)
        return cls(_unwrap((fp + fm) / 2), _unwrap(radial), _unwrap(np.asarray(r, dtype=float)))

    def model(self) -> tuple[np.ndarray, np.ndarray]:
        """Inverse of ``from_model``: the pair ``(F(ir), F(-ir))``."""
        s = np.asarray(self.scalar, dtype=complex)
        v = np.asarray(self.radial, dtype=complex)
        return s + 1j * v, s - 1j * v

    def __mul__(self, other: "AxialValue") -> "AxialValue":
        s = np.asarray(self.scalar) * other.scalar - np.asarray(self.radial) * other.radial
        v = np.asarray(self.scalar) * other.radial + np.asarray(self.radial) * other.scalar
        return AxialValue(_unwrap(np.asarray(s, complex)), _unwrap(np.asarray(v, complex)), self.r)

    def __add__(self, other: "AxialValue") -> "AxialValue":
        return AxialValue(
            _unwrap(np.asarray(self.scalar + other.scalar, complex)),
            _unwrap(np.asarray(self.radial + other.radial, complex)),
            self.r,
        )

    def magnitude(self) -> np.ndarray | float:
        return _unwrap(np.sqrt(np.abs(self.scalar) ** 2 + np.abs(self.radial) ** 2))

    def to_multivector(self, x) -> Multivector:
        """Single-point value as a Clifford element; ``x`` is the evaluation point."""
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        out = Multivector.scalar(x.size, complex(self.scalar))
        if r > 0:
            out = out + embed_vector(x) * (complex(self.radial) / r)
        return out


def _unwrap(a):
    a = np.asarray(a)
    return a[()] if a.ndim == 0 else a


def _radius(x, m: int) -> np.ndarray:
    """Norm over the last axis of points in R^m."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 0 or x.shape[-1] != m:
        raise ValueError(f"points must have a trailing axis of length {m}, got shape {x.shape}")
    return np.linalg.norm(x, axis=-1)


def axial_mul(p: AxialPolynomial, q: AxialPolynomial) -> AxialPolynomial:
    p._same_dim(q)
    return AxialPolynomial(p.m, tuple(np.convolve(p.array(), q.array())))


def gamma_factor(n: np.ndarray | int, m: int) -> np.ndarray:
    """Coefficient of ``x^(n-1)`` in the Dirac derivative of ``x^n``."""
    n = np.asarray(n)
    return np.where(n % 2 == 0, -n, -(m + n - 1))


def axial_dirac(p: AxialPolynomial) -> AxialPolynomial:
    c = p.array()
    if c.size == 1:
        return AxialPolynomial(p.m, (0j,))
    n = np.arange(1, c.size)
    return AxialPolynomial(p.m, tuple(gamma_factor(n, p.m) * c[1:]))


def axial_eval(p: AxialPolynomial, x) -> AxialValue:
    """Evaluate at points ``x`` of shape ``(..., m)``."""
    return axial_eval_radius(p, _radius(x, p.m))


def axial_eval_radius(p: AxialPolynomial, r) -> AxialValue:
    r = np.asarray(r, dtype=float)
    u = -(r**2)
    c = p.array()
    scalar = npoly.polyval(u, c[0::2]) if c[0::2].size else np.zeros_like(u, complex)
    odd = c[1::2]
    radial = r * npoly.polyval(u, odd) if odd.size else np.zeros_like(u, complex)
    return AxialValue(_unwrap(np.asarray(scalar, complex)), _unwrap(np.asarray(radial, complex)), _unwrap(r))


def generalized_binomial(s: complex, count: int) -> np.ndarray:
    """``B(s, j) = s (s-1) ... (s-j+1) / j!`` for ``j = 0 .. count-1``."""
    out = np.empty(count, dtype=complex if np.iscomplexobj(s) else float)
    out[0] = 1.0
    for j in range(1, count):
        out[j] = out[j - 1] * (s - (j - 1)) / j
    return out


@lru_cache(maxsize=256)
def _dyadic_weight_coeffs(alpha: float, beta: float, N: int) -> tuple[float, ...]:
    # Floats are dyadic rationals, so with a common denominator Q the scaled sums
    # n! Q^n a_n are integers; integer true division then rounds correctly.
    pa, qa = alpha.as_integer_ratio()
    pb, qb = beta.as_integer_ratio()
    Q = max(qa, qb)
    A, B = pa * (Q // qa), pb * (Q // qb)
    fa, fb = [1], [1]
    for j in range(1, N + 1):
        fa.append(-fa[-1] * (A - (j - 1) * Q))
        fb.append(fb[-1] * (B - (j - 1) * Q))
    out, den = [], 1
    for n in range(N + 1):
        if n:
            den *= n * Q
        num = sum(math.comb(n, i) * fb[i] * fa[n - i] for i in range(n + 1))
        out.append(num / den)
    return tuple(out)


def weight_coeffs(w: WeightParams, N: int) -> AxialPolynomial:
    """Taylor coefficients ``a_0 .. a_N`` of the weight in powers of x.

    Real exponents are summed exactly (the alternating binomial convolution
    cancels badly in floating point); complex exponents fall back to it.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if np.isrealobj(w.alpha) and np.isrealobj(w.beta):
        return AxialPolynomial(w.m, _dyadic_weight_coeffs(float(w.alpha), float(w.beta), N))
    bb = generalized_binomial(w.beta, N + 1)
    ba = generalized_binomial(w.alpha, N + 1) * (-1.0) ** np.arange(N + 1)
    return AxialPolynomial(w.m, tuple(np.convolve(bb, ba)[: N + 1]))


def weight_model(alpha, beta, z) -> np.ndarray:
    """``(1 - z)^alpha (1 + z)^beta`` on the principal branch."""
    z = np.asarray(z, dtype=complex)
    return np.power(1 - z, alpha) * np.power(1 + z, beta)


def weight_eval(w: WeightParams, x) -> AxialValue:
    return weight_eval_radius(w, _radius(x, w.m))


def weight_eval_radius(w: WeightParams, r) -> AxialValue:
    r = np.asarray(r, dtype=float)
    z = 1j * r
    return AxialValue.from_model(weight_model(w.alpha, w.beta, z), weight_model(w.alpha, w.beta, -z), r)


_SMALL_R = 1e-6


def weight_dirac(w: WeightParams, x) -> AxialValue:
    return weight_dirac_radius(w, _radius(x, w.m))


def weight_dirac_radius(w: WeightParams, r) -> AxialValue:
    """Dirac derivative of the weight, evaluated in closed form.

    The odd-part term ``(m-1)/(2x) [w(x) - w(-x)]`` equals ``(m-1) radial(w)/r``
    times the identity, which is replaced by its Taylor limit near the origin.
    """
    r = np.asarray(r, dtype=float)
    base = weight_eval_radius(w, r)
    lo = weight_eval_radius(w.shifted(-1, 0), r)
    hi = weight_eval_radius(w.shifted(0, -1), r)
    a = weight_coeffs(w, 3).array()
    a = np.pad(a, (0, 4 - a.size))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(r < _SMALL_R, a[1] - a[3] * r**2, np.asarray(base.radial) / np.where(r > 0, r, 1))
    scalar = w.alpha * np.asarray(lo.scalar) - w.beta * np.asarray(hi.scalar) - (w.m - 1) * ratio
    radial = w.alpha * np.asarray(lo.radial) - w.beta * np.asarray(hi.radial)
    return AxialValue(_unwrap(np.asarray(scalar, complex)), _unwrap(np.asarray(radial, complex)), _unwrap(r))


def ck_extension(g: AxialPolynomial, x0: float, x) -> AxialValue:
    """Monogenic extension ``sum_k (-x0)^k / k! (d^k g)(x)``."""
    out = None
    term = g
    for k in range(g.degree + 1 if not g.is_zero else 1):
        val = axial_eval(term, x)
        coef = (-x0) ** k / math.factorial(k)
        piece = AxialValue(val.scalar * coef, val.radial * coef, val.r)
        out = piece if out is None else out + piece
        term = axial_dirac(term)
    return out
