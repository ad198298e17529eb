"""Admissibility constants with node-doubling drift and the Rodrigues residual per descriptor."""

import sys

import numpy as np

from cjw.cwt import WaveletDescriptor, admissibility
from cjw.jacobi import rodrigues_residual

DESCRIPTORS = [(1, -4.0, -4.0, 2), (2, -6.0, -6.0, 2), (1, -3.5, -3.5, 2), (2, -5.0, -5.0, 3), (3, -8.0, -8.0, 2)]


def main():
    rng = np.random.default_rng(0)
    print("ell,alpha,beta,m,A,doubling_drift,rodrigues_residual")
    for ell, alpha, beta, m in DESCRIPTORS:
        wd = WaveletDescriptor(ell, alpha, beta, m)
        A = admissibility(wd)
        drift = abs(admissibility(wd, 128) - A) / A
        pts = rng.normal(size=(100, m))
        res = rodrigues_residual(ell, wd.params, pts)
        print(f"{ell},{alpha},{beta},{m},{A:.12g},{drift:.2e},{res:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
