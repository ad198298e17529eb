"""Dense complex Clifford algebra with generators squaring to -1.

Blades are stored in graded lexicographic order: ``1, e1, ..., em, e12, e13,
..., e(m-1)m, e123, ...``. Internally each blade is also identified by a
bitmask (bit ``j-1`` set when ``e_j`` is present) which is what the sign
computation works on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np

MAX_DIM = 8


@dataclass(frozen=True)
class BladeLayout:
    m: int
    blades: tuple[tuple[int, ...], ...]
    masks: np.ndarray
    index_of_mask: np.ndarray
    grades: np.ndarray
    # product tables: e_A e_B = sign[A, B] * e_{target[A, B]}
    sign: np.ndarray
    target: np.ndarray

    @property
    def size(self) -> int:
        return len(self.blades)

    def index(self, blade) -> int:
        mask = 0
        for j in blade:
            mask |= 1 << (j - 1)
        return int(self.index_of_mask[mask])


def _reorder_sign(a: int, b: int) -> int:
    # transpositions needed to merge the sorted factors of e_a e_b
    swaps = 0
    a >>= 1
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def layout(m: int) -> BladeLayout:
    if not 1 <= m <= MAX_DIM:
        raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {m}")
    blades = [()]
    for k in range(1, m + 1):
        blades.extend(combinations(range(1, m + 1), k))
    masks = np.array([sum(1 << (j - 1) for j in b) for b in blades], dtype=np.int64)
    index_of_mask = np.empty(1 << m, dtype=np.int64)
    index_of_mask[masks] = np.arange(len(blades))
    n = len(blades)
    sign = np.empty((n, n), dtype=np.int8)
    target = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            s = _reorder_sign(int(a), int(b))
            # each shared generator contracts with e_j^2 = -1
            if bin(int(a & b)).count("1") & 1:
                s = -s
            sign[i, j] = s
            target[i, j] = index_of_mask[a ^ b]
    grades = np.array([len(b) for b in blades], dtype=np.int64)
    for arr in (masks, index_of_mask, sign, target, grades):
        arr.setflags(write=False)
    return BladeLayout(m, tuple(blades), masks, index_of_mask, grades, sign, target)


def blade_name(m: int, index: int) -> str:
    b = layout(m).blades[index]
    return "1" if not b else "e" + "".join(str(j) for j in b)


class Multivector:
    """Element of the complexified Clifford algebra on ``m`` generators."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=None):
        lay = layout(m)
        if coeffs is None:
            arr = np.zeros(lay.size, dtype=complex)
        else:
            arr = np.array(coeffs, dtype=complex)
            if arr.shape != (lay.size,):
                raise ValueError(f"expected {lay.size} coefficients for m={m}, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @classmethod
    def scalar(cls, m: int, value: complex = 1.0) -> "Multivector":
        c = np.zeros(layout(m).size, dtype=complex)
        c[0] = value
        return cls(m, c)

    @classmethod
    def blade(cls, m: int, generators, value: complex = 1.0) -> "Multivector":
        """Basis blade ``value * e_{j1} e_{j2} ...`` for sorted distinct generators."""
        gens = tuple(generators)
        if list(gens) != sorted(set(gens)):
            raise ValueError("generators must be distinct and increasing")
        c = np.zeros(layout(m).size, dtype=complex)
        c[layout(m).index(gens)] = value
        return cls(m, c)

    def __repr__(self) -> str:
        terms = [f"({c:.6g})*{blade_name(self.m, i)}" for i, c in enumerate(self.coeffs) if c != 0]
        return f"Multivector(m={self.m}, " + (" + ".join(terms) or "0") + ")"

    def _check(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            return NotImplemented
        if other.m != self.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")
        return None

    def __add__(self, other):
        if np.isscalar(other):
            return self + Multivector.scalar(self.m, other)
        self._check(other)
        return Multivector(self.m, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.m, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if np.isscalar(other):
            return Multivector(self.m, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Multivector(self.m, self.coeffs * other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def grade(self, k: int) -> "Multivector":
        lay = layout(self.m)
        return Multivector(self.m, np.where(lay.grades == k, self.coeffs, 0))

    @property
    def scalar_part(self) -> complex:
        return complex(self.coeffs[0])

    def vector_part(self) -> np.ndarray:
        return self.coeffs[1 : self.m + 1].copy()

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def conjugation(self) -> "Multivector":
        return anti_involution(self, "conjugation")

    def inversion(self) -> "Multivector":
        return anti_involution(self, "inversion")

    def isclose(self, other: "Multivector", rtol=1e-12, atol=1e-12) -> bool:
        self._check(other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=rtol, atol=atol))


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    if a.m != b.m:
        raise ValueError(f"dimension mismatch: {a.m} vs {b.m}")
    lay = layout(a.m)
    terms = np.multiply.outer(a.coeffs, b.coeffs) * lay.sign
    flat = lay.target.ravel()
    w = terms.ravel()
    out = np.bincount(flat, weights=w.real, minlength=lay.size) + 1j * np.bincount(
        flat, weights=w.imag, minlength=lay.size
    )
    return Multivector(a.m, out)


@lru_cache(maxsize=None)
def involution_signs(m: int, kind: str) -> np.ndarray:
    k = layout(m).grades
    reverse = np.where((k * (k - 1) // 2) % 2 == 0, 1, -1)
    if kind == "inversion":
        return reverse
    if kind == "conjugation":
        return reverse * np.where(k % 2 == 0, 1, -1)
    raise ValueError(f"unknown anti-involution {kind!r}")


def anti_involution(a: Multivector, kind: str) -> Multivector:
    """Conjugation (e_j -> -e_j, i -> -i) or inversion (e_j -> e_j), both reversing products."""
    signs = involution_signs(a.m, kind)
    coeffs = a.coeffs * signs
    if kind == "conjugation":
        coeffs = np.conj(coeffs)
    return Multivector(a.m, coeffs)


def embed_vector(v, m: int | None = None) -> Multivector:
    v = np.asarray(v, dtype=complex)
    m = v.shape[0] if m is None else m
    if v.shape != (m,):
        raise ValueError(f"vector of length {v.shape} does not fit m={m}")
    c = np.zeros(layout(m).size, dtype=complex)
    c[1 : m + 1] = v
    return Multivector(m, c)


def dot_wedge(x, y) -> tuple[complex, Multivector]:
    """Split ``x y`` into its scalar part ``-<x, y>`` and the wedge bivector."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("vectors must share a 1-d shape")
    m = x.shape[0]
    dot = -float(np.dot(x, y))
    lay = layout(m)
    c = np.zeros(lay.size, dtype=complex)
    for j in range(1, m + 1):
        for k in range(j + 1, m + 1):
            c[lay.index((j, k))] = x[j - 1] * y[k - 1] - x[k - 1] * y[j - 1]
    return dot, Multivector(m, c)


# --------------------------------------------------------------------------
# sampled fields


@dataclass(frozen=True)
class GridField:
    """Uniformly sampled function on R^m with values in C_m.

    ``channels`` maps a blade index (graded lexicographic order) to a complex
    array of shape ``shape``. Absent blades are identically zero.
    """

    m: int
    spacing: tuple[float, ...]
    origin: tuple[float, ...]
    channels: dict[int, np.ndarray] = field(default_factory=dict)
    shape: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.m not in (1, 2, 3):
            raise ValueError(f"grid fields support m in {{1, 2, 3}}, got {self.m}")
        spacing = tuple(float(s) for s in self.spacing)
        origin = tuple(float(o) for o in self.origin)
        if len(spacing) != self.m or len(origin) != self.m:
            raise ValueError("spacing and origin need one entry per axis")
        if any(s <= 0 for s in spacing):
            raise ValueError("spacing must be strictly positive")
        chans = {}
        shape = self.shape
        for k, v in sorted(self.channels.items()):
            if not 0 <= int(k) < layout(self.m).size:
                raise ValueError(f"blade index {k} out of range for m={self.m}")
            arr = np.asarray(v, dtype=complex)
            if arr.ndim != self.m:
                raise ValueError(f"channel {k} has {arr.ndim} axes, expected {self.m}")
            if shape is None:
                shape = arr.shape
            elif arr.shape != tuple(shape):
                raise ValueError("all channels must share one shape")
            arr = arr.copy()
            arr.setflags(write=False)
            chans[int(k)] = arr
        if shape is None:
            raise ValueError("a field without channels needs an explicit shape")
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "channels", chans)
        object.__setattr__(self, "shape", tuple(int(n) for n in shape))

    @classmethod
    def zeros_like(cls, other: "GridField", blades=()) -> "GridField":
        return cls(
            other.m,
            other.spacing,
            other.origin,
            {b: np.zeros(other.shape, dtype=complex) for b in blades},
            shape=other.shape,
        )

    def axes(self) -> list[np.ndarray]:
        return [o + h * np.arange(n) for o, h, n in zip(self.origin, self.spacing, self.shape)]

    def coords(self) -> np.ndarray:
        """Sample positions, shape ``shape + (m,)``."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def channel(self, blade: int) -> np.ndarray:
        return self.channels.get(blade, np.zeros(self.shape, dtype=complex))

    def congruent(self, other: "GridField") -> bool:
        return (
            self.m == other.m
            and self.shape == other.shape
            and np.allclose(self.spacing, other.spacing)
            and np.allclose(self.origin, other.origin)
        )

    def with_channels(self, channels: dict[int, np.ndarray]) -> "GridField":
        return GridField(self.m, self.spacing, self.origin, channels, shape=self.shape)

    def norm(self) -> float:
        """Discrete L2 norm summed over all channels."""
        total = sum(float(np.sum(np.abs(v) ** 2)) for v in self.channels.values())
        return float(np.sqrt(total * self.cell_volume))


def dirac_fd(f: GridField) -> GridField:
    """Central-difference Dirac operator sum_j e_j d/dx_j acting from the left.

    Boundary samples use one-sided second-order stencils.
    """
    if min(f.shape) < 5:
        raise ValueError(f"dirac_fd needs at least 5 samples per axis, got shape {f.shape}")
    lay = layout(f.m)
    out: dict[int, np.ndarray] = {}
    for blade, values in f.channels.items():
        for j in range(f.m):
            d = np.gradient(values, f.spacing[j], axis=j, edge_order=2)
            ej = lay.index((j + 1,))
            tgt = int(lay.target[ej, blade])
            out[tgt] = out.get(tgt, 0) + lay.sign[ej, blade] * d
    return f.with_channels(out)


# --------------------------------------------------------------------------
# on-disk format: JSON header + raw little-endian interleaved complex128


def save_field(f: GridField, prefix) -> tuple[Path, Path]:
    prefix = Path(prefix)
    header_path = prefix.with_suffix(".json")
    payload_path = prefix.with_suffix(".bin")
    blades = sorted(f.channels)
    header = {
        "m": f.m,
        "shape": list(f.shape),
        "spacing": list(f.spacing),
        "origin": list(f.origin),
        "channels": blades,
        "dtype": "f64-complex-interleaved",
        "endianness": "little",
        "layout": "row-major",
        "payload": payload_path.name,
    }
    header_path.write_text(json.dumps(header, indent=2, sort_keys=True) + "\n")
    with open(payload_path, "wb") as fh:
        for b in blades:
            fh.write(np.ascontiguousarray(f.channels[b], dtype="<c16").tobytes(order="C"))
    return header_path, payload_path


def load_field(path) -> GridField:
    path = Path(path)
    header_path = path if path.suffix == ".json" else path.with_suffix(".json")
    header = json.loads(header_path.read_text())
    if header.get("dtype") != "f64-complex-interleaved" or header.get("endianness") != "little":
        raise ValueError("unsupported field encoding")
    if header.get("layout", "row-major") != "row-major":
        raise ValueError("only row-major payloads are supported")
    payload = header_path.parent / header.get("payload", header_path.with_suffix(".bin").name)
    shape = tuple(header["shape"])
    blades = header["channels"]
    data = np.fromfile(payload, dtype="<c16")
    count = int(np.prod(shape))
    if data.size != count * len(blades):
        raise ValueError(f"payload holds {data.size} values, header implies {count * len(blades)}")
    channels = {int(b): data[i * count : (i + 1) * count].reshape(shape) for i, b in enumerate(blades)}
    return GridField(header["m"], header["spacing"], header["origin"], channels, shape=shape)
