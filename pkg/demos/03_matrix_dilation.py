"""Matrix dilations: measured ratios against the product of Gamma factors.

For Lambda = diag(2^k, 2^-k) and a rotated version P Lambda Q, the ratio
||D_A f|| / ||f|| on a tensor of extremal functions is divided by the
predicted bound.  The quotient should stay bounded as k grows; the
rotations leave the predicted bound unchanged.

    python demos/03_matrix_dilation.py      (about two minutes)
"""

import numpy as np

from modspace.dilation import DilationSpec, empirical_ratios, predicted_bound
from modspace.extremal import make_g1, make_g2
from modspace.field import tensor
from modspace.norms import modulation_norms

PAIRS = [(2, 2), (4, 2), (2, 4), (1, np.inf), (np.inf, 1)]


def rot(th):
    return np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])


def table(name, f, matrices):
    ref = modulation_norms(f, PAIRS, spacing=0.5)
    print(f"\n{name}:  ratio / bound for (p,q) = {PAIRS}")
    for label, A in matrices:
        r = empirical_ratios(A, f, PAIRS, spacing=0.5, reference=ref)
        q = [v / predicted_bound(A, e) for v, e in zip(r, PAIRS)]
        print(f"  {label:>22s}  " + "  ".join(f"{v:7.4f}" for v in q))


def main():
    g1, g2 = make_g1(1), make_g2(1)
    diag = [(f"diag(2^{k}, 2^-{k})", DilationSpec.diagonal([2.0**k, 2.0**-k])) for k in range(1, 5)]
    table("g1 x g2", tensor(g1, g2), diag)
    rng = np.random.default_rng(1)
    rotated = []
    for k in range(1, 5):
        t1, t2 = rng.uniform(0, np.pi, 2)
        rotated.append((f"P diag(2^{k},2^-{k}) Q", DilationSpec.from_factors(rot(t1), [2.0**k, 2.0**-k], rot(t2))))
    table("g1 x g1, rotated", tensor(g1, g1), rotated)


if __name__ == "__main__":
    main()
