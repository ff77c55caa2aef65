"""Identity suite with a negative control.

Runs every identity check once as-is and once with the STFT phase
corrupted by e^{i pi/8}; the second run must flag the fundamental
identities.

    python demos/05_identity_suite.py
"""

import numpy as np

from modspace.cli import run_identity_suite


def show(title, rows):
    print(title)
    for name, err, tol, ok in rows:
        print(f"  {'PASS' if ok else 'FAIL'}  {name:36s} {err:.2e}  (tol {tol:g})")


if __name__ == "__main__":
    show("clean run", run_identity_suite())
    show("\nphase corrupted", run_identity_suite(perturb=np.exp(1j * np.pi / 8)))
