"""Command-line front end: ``cjw <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .axial import WeightParams
from .clifford import GridField, load_field, save_field
from .cwt import (
    CwtResult,
    WaveletDescriptor,
    admissibility,
    cwt_forward,
    default_scales,
    grid_geometry,
    reconstruct,
)
from .fractional import Func1D, fractional_derivative, fractional_integral
from .jacobi import generate
from .verify import SUITES, run_suite, unit_gaussian


@dataclass
class CommandConfig:
    command: str
    params: dict = field(default_factory=dict)
    out: str | None = None
    verbose: int = 0


class ConfigError(ValueError):
    """Invalid parameter combination, raised before any computation starts."""


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_text(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _descriptor(p: dict) -> WaveletDescriptor:
    try:
        return WaveletDescriptor(int(p["l"]), float(p["alpha"]), float(p["beta"]), int(p["m"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --------------------------------------------------------------------------


def cmd_gen_poly(cfg: CommandConfig) -> int:
    p = cfg.params
    if int(p["l"]) < 0:
        raise ConfigError("--l must be nonnegative")
    if int(p["m"]) < 1:
        raise ConfigError("--m must be positive")
    poly = generate(int(p["l"]), WeightParams(float(p["alpha"]), float(p["beta"]), int(p["m"]))).poly
    _write_text(cfg.out, poly.to_csv() + "\n")
    return 0


def cmd_verify(cfg: CommandConfig) -> int:
    report = run_suite(cfg.params["suite"])
    _write_text(cfg.out, _json(report))
    if cfg.out is not None and cfg.verbose:
        sys.stderr.write(f"{report['suite']}: {'pass' if report['pass'] else 'FAIL'} (max error {report['max_error']:.3g})\n")
    return 0 if report["pass"] else 1


def cmd_spectrum(cfg: CommandConfig) -> int:
    p = cfg.params
    wd = _descriptor(p)
    if not p["rho_max"] > 0 or p["points"] < 2:
        raise ConfigError("--rho-max must be positive and --points at least 2")
    rho = np.linspace(0.0, p["rho_max"], p["points"])
    spec = wd.spectrum(rho)
    rows = [
        [_fmt(r), _fmt(s.real), _fmt(s.imag), _fmt(v.real), _fmt(v.imag)]
        for r, s, v in zip(spec.rho, spec.scalar_part, spec.vector_part)
    ]
    _write_text(cfg.out, _csv(rows, ["rho", "re_scalar", "im_scalar", "re_vector", "im_vector"]))
    return 0


def cmd_admissibility(cfg: CommandConfig) -> int:
    wd = _descriptor(cfg.params)
    nodes = cfg.params.get("nodes")
    value = admissibility(wd, nodes)
    report = {"ell": wd.ell, "alpha": wd.alpha, "beta": wd.beta, "m": wd.m, "nodes": nodes, "admissibility": value}
    _write_text(cfg.out, _json(report))
    return 0


def _scales_from(p: dict, geom: GridField) -> np.ndarray:
    count = int(p.get("scales") or 32)
    if count < 1:
        raise ConfigError("--scales must be at least 1")
    default = default_scales(geom, count)
    amin = p.get("amin") or default[0]
    amax = p.get("amax") or default[-1]
    if not 0 < amin <= amax:
        raise ConfigError("need 0 < amin <= amax")
    if count == 1:
        return np.array([amin])
    return np.geomspace(amin, amax, count)


def cmd_cwt(cfg: CommandConfig) -> int:
    p = cfg.params
    if cfg.out is None:
        raise ConfigError("cwt needs --out PREFIX")
    f = load_field(p["input"])
    wd = _descriptor(p)
    if f.m != wd.m:
        raise ConfigError(f"input field has m={f.m} but --m {wd.m}")
    scales = _scales_from(p, f)
    cw = cwt_forward(f, wd, scales, kernel=p.get("kernel") or "spectral")
    prefix = Path(cfg.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    files, rows = [], []
    for i, (a, c) in enumerate(zip(cw.scales, cw.coeffs)):
        stem = prefix.parent / f"{prefix.name}_scale{i:03d}"
        save_field(c, stem)
        files.append(stem.with_suffix(".json").name)
        energy = sum(float(np.sum(np.abs(v) ** 2)) for v in c.channels.values()) * c.cell_volume
        peak = float(np.max(np.sqrt(sum(np.abs(v) ** 2 for v in c.channels.values()))))
        rows.append([_fmt(a), _fmt(energy), _fmt(peak)])
    _write_text(str(prefix.parent / f"{prefix.name}_summary.csv"), _csv(rows, ["scale", "energy", "max_abs_coeff"]))
    manifest = {
        "wavelet": {"l": wd.ell, "alpha": wd.alpha, "beta": wd.beta, "m": wd.m},
        "scales": [float(a) for a in cw.scales],
        "files": files,
        "kernel": cw.kernel,
        "pad": cw.pad,
    }
    _write_text(str(prefix.parent / f"{prefix.name}_manifest.json"), _json(manifest))
    return 0


def cmd_reconstruct(cfg: CommandConfig) -> int:
    p = cfg.params
    if cfg.out is None:
        raise ConfigError("reconstruct needs --out PREFIX")
    manifest_path = Path(p["manifest"])
    manifest = json.loads(manifest_path.read_text())
    wd = _descriptor(manifest["wavelet"])
    coeffs = tuple(load_field(manifest_path.parent / name) for name in manifest["files"])
    cw = CwtResult(np.asarray(manifest["scales"], dtype=float), coeffs, wd, manifest["kernel"], manifest["pad"])
    rec = reconstruct(cw)
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_field(rec.field, out)
    _write_text(str(out.parent / f"{out.name}_report.json"), _json({"vector_residual": rec.residual}))
    return 0


def cmd_frac(cfg: CommandConfig) -> int:
    p = cfg.params
    data = np.loadtxt(p["input"], delimiter=",", ndmin=2, comments="#")
    if data.shape[1] < 2:
        raise ConfigError("--input must have two columns: t, f(t)")
    f = Func1D.from_samples(data[:, 0], data[:, 1])
    kind = p["kind"]
    times = p["t"]
    lo, hi = data[0, 0], data[-1, 0]
    if not lo <= p["a"] < min(times) or max(times) > hi:
        raise ConfigError(f"need samples covering [a, t]: have [{lo}, {hi}], a={p['a']}, t={times}")
    if not p["alpha"] > 0:
        raise ConfigError("--alpha must be positive")
    rows = []
    for t in times:
        if kind == "rl-integral":
            v = fractional_integral(f, p["alpha"], p["a"], t, "riemann_liouville")
        elif kind == "hadamard":
            if not p["a"] > 0:
                raise ConfigError("the Hadamard integral needs --a > 0")
            v = fractional_integral(f, p["alpha"], p["a"], t, "hadamard")
        elif kind == "rl-derivative":
            v = fractional_derivative(f, p["alpha"], p["a"], t, "riemann_liouville")
        else:
            v = fractional_derivative(f, p["alpha"], p["a"], t, "caputo")
        rows.append([_fmt(t), _fmt(np.real(v))])
    _write_text(cfg.out, _csv(rows, ["t", "value"]))
    return 0


def cmd_gaussian(cfg: CommandConfig) -> int:
    p = cfg.params
    if cfg.out is None:
        raise ConfigError("gaussian-field needs --out PREFIX")
    geom = grid_geometry(p["m"], p["n"], p["half_width"])
    f = unit_gaussian(geom, p["sigma"]) if p["sigma"] > 0 else geom.with_channels({0: np.zeros(geom.shape)})
    save_field(f, cfg.out)
    return 0


COMMANDS = {
    "gen-poly": cmd_gen_poly,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "admissibility": cmd_admissibility,
    "cwt": cmd_cwt,
    "reconstruct": cmd_reconstruct,
    "frac": cmd_frac,
    "gaussian-field": cmd_gaussian,
}


def run(cfg: CommandConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def _wavelet_args(sp, defaults=True):
    sp.add_argument("--l", type=int, default=1 if defaults else None, required=not defaults)
    sp.add_argument("--alpha", type=float, default=-4.0 if defaults else None, required=not defaults)
    sp.add_argument("--beta", type=float, default=-4.0 if defaults else None, required=not defaults)
    sp.add_argument("--m", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cjw", description="Clifford-Jacobi polynomials and spheroidal wavelets")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen-poly", help="coefficients of G_l^{alpha,beta} as CSV")
    _wavelet_args(sp, defaults=False)
    sp.add_argument("--out")

    sp = sub.add_parser("verify", help="run a verification suite and emit a JSON report")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--out")

    sp = sub.add_parser("spectrum", help="wavelet spectrum on a uniform frequency grid")
    _wavelet_args(sp)
    sp.add_argument("--rho-max", type=float, default=10.0)
    sp.add_argument("--points", type=int, default=101)
    sp.add_argument("--out")

    sp = sub.add_parser("admissibility", help="admissibility constant of a wavelet")
    _wavelet_args(sp)
    sp.add_argument("--nodes", type=int)
    sp.add_argument("--out")

    sp = sub.add_parser("cwt", help="forward transform of a scalar field file")
    sp.add_argument("--input", required=True)
    _wavelet_args(sp)
    sp.add_argument("--scales", type=int, default=32)
    sp.add_argument("--amin", type=float)
    sp.add_argument("--amax", type=float)
    sp.add_argument("--kernel", choices=("spectral", "spatial"), default="spectral")
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("reconstruct", help="invert a transform written by the cwt command")
    sp.add_argument("--manifest", required=True)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("frac", help="fractional integral or derivative of sampled data")
    sp.add_argument("--kind", required=True, choices=("rl-integral", "hadamard", "rl-derivative", "caputo"))
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--t", type=float, nargs="+", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("gaussian-field", help="write a unit-norm Gaussian test field (sigma 0 gives zeros)")
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--n", type=int, default=128)
    sp.add_argument("--half-width", type=float, default=8.0)
    sp.add_argument("--sigma", type=float, default=0.25)
    sp.add_argument("--out", required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    params = {k: v for k, v in vars(ns).items() if k not in ("command", "out", "verbose")}
    cfg = CommandConfig(ns.command, params, getattr(ns, "out", None), ns.verbose)
    try:
        return run(cfg)
    except ConfigError as exc:
        ap.exit(2, f"cjw {ns.command}: error: {exc}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
