"""Exponent landscape of Gamma_{p,q}.

Prints mu1 / mu2 with their region labels on a coarse (1/p, 1/q) grid,
then shows how Gamma multiplies across singular values of a matrix.

    python demos/01_exponent_landscape.py
"""

import numpy as np

from modspace.dilation import classify_region, gamma, mu1, mu2, predicted_bound
from modspace.norms import ExponentPair


def landscape(n=5):
    vals = np.linspace(0, 1, n)
    print("1/p  1/q    mu1    mu2  regions")
    for ip in vals:
        for iq in vals:
            e = ExponentPair.from_inverse(ip, iq)
            r = classify_region(e)
            tag = f"{r.mu1_region}/{r.mu2_region}" + ("  (tie)" if r.boundary else "")
            print(f"{ip:4.2f} {iq:4.2f}  {mu1(e):+.2f}  {mu2(e):+.2f}  {tag}")


def matrix_bound():
    A = np.array([[3.0, 1.0], [0.5, 0.25]])
    lam = np.linalg.svd(A, compute_uv=False)
    print(f"\nsingular values of A: {lam.round(4)}")
    for e in [(2, 2), (4, 2), (2, 4), (1, np.inf), (np.inf, 1)]:
        per_axis = gamma(e, lam)
        print(f"(p,q)={e}: Gamma per axis {per_axis.round(4)}  product {predicted_bound(A, e):.4f}")


if __name__ == "__main__":
    landscape()
    matrix_bound()
