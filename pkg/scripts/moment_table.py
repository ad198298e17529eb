"""Moments int x^k psi dV of the mother wavelets, relative to int |x^k psi| dV.

Shows which k actually vanish, including unequal exponents.
"""

import sys

from cjw.axial import WeightParams
from cjw.jacobi import moment_integral

CASES = [
    (2, 1, -4.0, -4.0),
    (2, 2, -6.0, -6.0),
    (3, 2, -7.0, -7.0),
    (2, 3, -9.0, -9.0),
    (2, 1, -5.0, -3.0),
    (2, 1, -4.5, -3.5),
    (3, 1, -5.0, -3.5),
]


def main():
    print("m,ell,alpha,beta,k,moment,relative")
    for m, ell, alpha, beta in CASES:
        w = WeightParams(alpha, beta, m)
        kmax = min(ell, int(-(m + ell + alpha + beta)))
        for k in range(kmax + 1):
            res = moment_integral(k, ell, w)
            print(f"{m},{ell},{alpha},{beta},{k},{res.scalar.real:.12g},{res.relative():.3g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
