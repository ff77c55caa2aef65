"""Scalar dilations of the extremal families.

Runs the ``scalar`` experiment of ``sweep.ini`` and writes the
``(lambda, ratio)`` series next to this script, ready for plotting on
log-log axes.  Each family's fitted slope is compared with its own
exponent, and the extreme slopes per exponent pair with d*mu1 / d*mu2.

    python demos/02_scalar_dilation.py [--out series.csv]
"""

import argparse
from pathlib import Path

from modspace.cli import load_sweep_config, run_dilation_sweep

HERE = Path(__file__).resolve().parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--out", default=str(HERE / "scalar_series.csv"))
    a = ap.parse_args()
    rep = run_dilation_sweep(load_sweep_config(HERE / "sweep.ini", "scalar"))
    print(rep.to_text(), end="")
    Path(a.out).write_text(rep.series_csv())
    print(f"series written to {a.out}  ({rep.runtime:.1f} s)")


if __name__ == "__main__":
    main()
