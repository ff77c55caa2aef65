"""Hausdorff operators from kernel files.

Reads every ``kernels/*.kernel`` file, prints the well-definedness and
boundedness integrals for a few exponent pairs, and for the Hardy kernel
checks the adjoint pairing and the Fourier commutation identity.

    python demos/04_hausdorff.py
"""

from pathlib import Path

import numpy as np

from modspace.field import gaussian, translate
from modspace.hausdorff import (adjoint_pairing_check, boundedness_condition, fourier_commutation_check,
                                minkowski_bound_check, parse_kernel_file, well_definedness_check)

HERE = Path(__file__).resolve().parent
PAIRS = [(2, 2), (1, np.inf), (np.inf, 1), (4, 2)]


def main():
    for path in sorted((HERE / "kernels").glob("*.kernel")):
        K = parse_kernel_file(path)
        wd = well_definedness_check(K)
        conds = ", ".join(f"{e}: {boundedness_condition(K, e)}" for e in PAIRS)
        print(f"{path.name:20s} d={K.d}  well-defined: {wd}   conditions: {conds}")

    K = parse_kernel_file(HERE / "kernels" / "hardy.kernel")
    f, g = gaussian(1), translate(gaussian(1, 1.2), 0.3)
    print(f"\nHardy adjoint pairing gap   {adjoint_pairing_check(K, f, g):.2e}")
    print(f"Hardy Fourier commutation   {fourier_commutation_check(K, None, f):.2e}")
    r = minkowski_bound_check(K, f, (2, 2), spacing=0.25)
    print(f"Hardy ||Hf|| / (condition ||f||) at (2,2): {r['ratio']:.4f}")


if __name__ == "__main__":
    main()
