"""Command-line experiment harness.

Subcommands
-----------
``sweep``      dilation sweeps over extremal families with slope fits
``verify``     identity suite (STFT, norms, Hausdorff operators)
``hausdorff``  condition integrals for a kernel definition file
``gamma``      exponent tables ``mu1``, ``mu2``, region labels and ``Gamma``

Exit codes: 0 all checks pass, 1 a tolerance failure, 2 configuration
error.  The worker count for sweeps is read from ``MODSPACE_WORKERS``.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import hashlib
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dilation import classify_region, gamma, mu1, mu2
from .extremal import (EXPAND_LAMBDAS, SHRINK_LAMBDAS, fit_slope, make_FlamL, make_g1, make_g2)
from .field import dilate
from .norms import ExponentPair, modulation_norms, modulation_norms_box

__all__ = [
    "ConfigError",
    "SweepConfig",
    "SweepReport",
    "load_sweep_config",
    "run_dilation_sweep",
    "run_identity_suite",
    "run_hausdorff_check",
    "gamma_table",
    "main",
]

ENV_WORKERS = "MODSPACE_WORKERS"
DEFAULT_PAIRS = ((2.0, 2.0), (4.0, 2.0), (2.0, 4.0), (1.0, math.inf), (math.inf, 1.0))
FAMILY_ALIASES = {"g1": "g1", "bandlimited_g1": "g1", "g2": "g2", "compact_g2": "g2",
                  "F": "F", "f": "F", "lattice_FlamL": "F", "flaml": "F"}
FAMILY_SIDE = {"g1": "shrink", "g2": "expand", "F": "shrink"}
DEFAULT_TOLERANCE = {"g1": 0.05, "g2": 0.05, "F": 0.1, "envelope": 0.1}
DEFAULT_F_LAMBDAS = tuple(2.0**-k for k in range(2, 7))


class ConfigError(ValueError):
    """Invalid experiment configuration (exit code 2)."""


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


def _parse_pairs(text) -> tuple:
    if isinstance(text, (list, tuple)):
        items = text
    else:
        items = [s for s in str(text).replace(";", " ").split() if s]
    out = []
    for it in items:
        try:
            e = ExponentPair.coerce(it)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad exponent pair {it!r}: {exc}") from None
        out.append((e.p, e.q))
    if not out:
        raise ConfigError("no exponent pairs given")
    return tuple(out)


def _geometric(lo, hi, n):
    if n < 2 or lo <= 0 or hi <= 0:
        raise ConfigError("lambda grid needs positive bounds and at least two steps")
    return tuple(float(v) for v in np.geomspace(lo, hi, int(n)))


@dataclass(frozen=True)
class SweepConfig:
    """Everything that determines a sweep (and its report hash)."""

    experiment: str = "default"
    families: tuple = ("g1", "g2", "F")
    pairs: tuple = DEFAULT_PAIRS
    dim: int = 1
    lambdas: tuple = None
    L: float = 64.0
    spacing: float = None
    method: str = "stft"
    tolerance: dict = field(default_factory=dict)

    def __post_init__(self):
        fams = tuple(FAMILY_ALIASES.get(f, f) for f in self.families)
        bad = [f for f in fams if f not in FAMILY_SIDE]
        if bad:
            raise ConfigError(f"unknown family {bad[0]!r}")
        object.__setattr__(self, "families", fams)
        object.__setattr__(self, "pairs", _parse_pairs(self.pairs))
        if self.dim not in (1, 2):
            raise ConfigError("dim must be 1 or 2")
        if self.method not in ("stft", "box"):
            raise ConfigError("method must be 'stft' or 'box'")
        if self.lambdas is not None:
            lam = tuple(float(v) for v in self.lambdas)
            if len(lam) < 4:
                raise ConfigError("slope fits need at least four lambda values")
            object.__setattr__(self, "lambdas", lam)
        if self.L <= 0:
            raise ConfigError("L must be positive")

    def tol(self, key: str) -> float:
        return float(self.tolerance.get(key, self.tolerance.get("all", DEFAULT_TOLERANCE[key])))

    def grid_for(self, fam: str) -> tuple:
        """Lambda grid of a family; a user grid on the wrong side is reflected ``lam -> 1/lam``."""
        if self.lambdas is None:
            return {"g1": SHRINK_LAMBDAS, "g2": EXPAND_LAMBDAS, "F": DEFAULT_F_LAMBDAS}[fam]
        lam = np.array(self.lambdas)
        if np.all(lam <= 1) == np.all(lam >= 1) and not np.all(lam == 1):
            raise ConfigError("lambda grid must lie on one side of 1")
        shrink = bool(np.all(lam <= 1))
        if shrink != (FAMILY_SIDE[fam] == "shrink"):
            lam = 1.0 / lam
        return tuple(float(v) for v in lam)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "families": list(self.families),
            "pairs": [[_fmt(p), _fmt(q)] for p, q in self.pairs],
            "dim": self.dim,
            "lambdas": None if self.lambdas is None else list(self.lambdas),
            "L": self.L,
            "spacing": self.spacing,
            "method": self.method,
            "tolerance": {k: self.tol(k) for k in sorted(DEFAULT_TOLERANCE)},
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _fmt(v: float):
    return "inf" if math.isinf(v) else v


def load_sweep_config(path=None, experiment: str = None, overrides: dict = None) -> SweepConfig:
    """Read a ``[section]``-per-experiment ``key = value`` file and apply overrides.

    Keys: ``families``, ``pq``, ``dim``, ``lambda_min``, ``lambda_max``,
    ``lambda_steps``, ``lambdas``, ``L``, ``spacing``, ``method``,
    ``tolerance`` (all families) and ``tolerance_<family>``.
    """
    raw = {}
    exp = experiment or "default"
    if path is not None:
        cp = configparser.ConfigParser()
        try:
            with open(path) as fh:
                cp.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        sections = cp.sections()
        if experiment is None and sections:
            exp = sections[0]
        if sections and exp not in sections:
            raise ConfigError(f"experiment {exp!r} not in config (have {', '.join(sections)})")
        if sections:
            raw.update(cp[exp])
    for k, v in (overrides or {}).items():
        if v is not None:
            raw[k] = v
    known = {"families", "pq", "dim", "lambda_min", "lambda_max", "lambda_steps", "lambdas", "l",
             "spacing", "method", "tolerance"} | {f"tolerance_{k.lower()}" for k in DEFAULT_TOLERANCE}
    unknown = [k for k in raw if k.lower() not in known]
    if unknown:
        raise ConfigError(f"unknown config key {unknown[0]!r}")
    raw = {k.lower(): v for k, v in raw.items()}
    try:
        kw = {"experiment": exp}
        if "families" in raw:
            fam = raw["families"]
            kw["families"] = tuple(s for s in (fam.replace(",", " ").split() if isinstance(fam, str) else fam))
        if "pq" in raw:
            kw["pairs"] = raw["pq"]
        if "dim" in raw:
            kw["dim"] = int(raw["dim"])
        if "lambdas" in raw:
            v = raw["lambdas"]
            kw["lambdas"] = tuple(float(s) for s in (v.replace(",", " ").split() if isinstance(v, str) else v))
        elif any(k in raw for k in ("lambda_min", "lambda_max", "lambda_steps")):
            if not all(k in raw for k in ("lambda_min", "lambda_max", "lambda_steps")):
                raise ConfigError("lambda_min, lambda_max and lambda_steps go together")
            kw["lambdas"] = _geometric(float(raw["lambda_min"]), float(raw["lambda_max"]),
                                       int(raw["lambda_steps"]))
        if "l" in raw:
            kw["L"] = float(raw["l"])
        if "spacing" in raw:
            kw["spacing"] = float(raw["spacing"])
        if "method" in raw:
            kw["method"] = str(raw["method"])
        tol = {}
        if "tolerance" in raw:
            tol["all"] = float(raw["tolerance"])
        for k in DEFAULT_TOLERANCE:
            if f"tolerance_{k.lower()}" in raw:
                tol[k] = float(raw[f"tolerance_{k.lower()}"])
        kw["tolerance"] = tol
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from None
    return SweepConfig(**kw)


def _family_function(fam: str, d: int, lam: float, L: float):
    if fam == "g1":
        return make_g1(d)
    if fam == "g2":
        return make_g2(d)
    return make_FlamL(min(lam, 1.0 / lam), L, d)


def _ratio_task(task):
    fam, d, L, spacing, method, lam, pairs = task
    f = _family_function(fam, d, lam, L)
    g = dilate(f, lam)
    es = [ExponentPair(p, q) for p, q in pairs]
    if method == "box":
        num, den = modulation_norms_box(g, es), modulation_norms_box(f, es)
    else:
        num, den = modulation_norms(g, es, spacing=spacing), modulation_norms(f, es, spacing=spacing)
    return [float(a / b) for a, b in zip(num, den)]


def _expected(fam: str, e: ExponentPair, d: int) -> float:
    if fam == "g1":
        return -d * e.ip
    if fam == "g2":
        return d * (e.iq - 1)
    return d * (-2 * e.ip + e.iq)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(ENV_WORKERS, "1")))
    except ValueError:
        raise ConfigError(f"{ENV_WORKERS} must be an integer") from None


@dataclass
class SweepReport:
    """Fitted slopes against expected exponents for one sweep configuration."""

    config: SweepConfig
    rows: list
    envelope: list
    series: list
    runtime: float = 0.0

    @property
    def config_hash(self) -> str:
        return self.config.digest()

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.rows + self.envelope)

    def to_json(self) -> str:
        doc = {"version": __version__, "config_hash": self.config_hash, "config": self.config.to_dict(),
               "rows": self.rows, "envelope": self.envelope, "series": self.series, "passed": self.passed}
        return json.dumps(doc, indent=2, sort_keys=False, default=_fmt) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["config_hash", "experiment", "kind", "family", "p", "q", "dim", "side", "n_lambda",
                    "slope", "expected", "tolerance", "pass"])
        d = self.config.dim
        for r in self.rows:
            w.writerow([self.config_hash, self.config.experiment, "family", r["family"], r["p"], r["q"], d,
                        r["side"], len(r["lambdas"]), f"{r['slope']:.10f}", f"{r['expected']:.10f}",
                        r["tolerance"], int(r["pass"])])
        for r in self.envelope:
            w.writerow([self.config_hash, self.config.experiment, "envelope", r["family"], r["p"], r["q"], d,
                        r["side"], "", f"{r['slope']:.10f}", f"{r['expected']:.10f}", r["tolerance"],
                        int(r["pass"])])
        return buf.getvalue()

    def series_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["config_hash", "family", "p", "q", "lambda", "ratio"])
        for s in self.series:
            w.writerow([self.config_hash, s["family"], s["p"], s["q"], repr(s["lambda"]), repr(s["ratio"])])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"sweep {self.config.experiment}  dim={self.config.dim}  hash={self.config_hash}"]
        for r in self.rows + self.envelope:
            lines.append(f"  {'PASS' if r['pass'] else 'FAIL'}  {r['family']:>8s}  (p,q)=({r['p']},{r['q']})"
                         f"  {r['side']:>6s}  slope={r['slope']:+.4f}  expected={r['expected']:+.4f}"
                         f"  tol={r['tolerance']}")
        return "\n".join(lines) + "\n"


def run_dilation_sweep(config: SweepConfig) -> SweepReport:
    """Fit ``log ||D_lam f|| - log ||f||`` against ``log lam`` for each family and pair.

    Each family's slope is compared with its own exponent.  Because the
    reciprocal ratio at ``1/lam`` is realized by the test function
    ``D_lam f``, a family's slope is admissible on both sides of ``lam = 1``;
    the smallest slope over families is compared with ``d mu2`` (shrinking
    side) and the largest with ``d mu1`` (expanding side).
    """
    t0 = time.perf_counter()
    d = config.dim
    pairs = config.pairs
    tasks = {}
    for fam in config.families:
        sp = config.spacing if config.spacing is not None else (0.5 if fam == "F" else None)
        for lam in config.grid_for(fam):
            tasks[(fam, lam)] = (fam, d, config.L, sp, config.method, lam, pairs)
    keys = sorted(tasks)
    nw = _workers()
    if nw > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=nw) as ex:
            results = dict(zip(keys, ex.map(_ratio_task, [tasks[k] for k in keys])))
    else:
        results = {k: _ratio_task(tasks[k]) for k in keys}

    rows, series = [], []
    for fam in config.families:
        lams = config.grid_for(fam)
        for i, (p, q) in enumerate(pairs):
            e = ExponentPair(p, q)
            ratios = [results[(fam, lam)][i] for lam in lams]
            slope = fit_slope(lams, ratios)
            exp = _expected(fam, e, d)
            tol = config.tol(fam)
            rows.append({"family": fam, "p": _fmt(p), "q": _fmt(q), "side": FAMILY_SIDE[fam],
                         "lambdas": list(lams), "ratios": ratios, "slope": slope, "expected": exp,
                         "tolerance": tol, "pass": bool(abs(slope - exp) <= tol)})
            series.extend({"family": fam, "p": _fmt(p), "q": _fmt(q), "lambda": lam, "ratio": r}
                          for lam, r in zip(lams, ratios))
    envelope = []
    if set(config.families) == set(FAMILY_SIDE):
        tol = config.tol("envelope")
        for p, q in pairs:
            e = ExponentPair(p, q)
            mine = [r for r in rows if r["p"] == _fmt(p) and r["q"] == _fmt(q)]
            lo = min(mine, key=lambda r: r["slope"])
            hi = max(mine, key=lambda r: r["slope"])
            for side, r, exp in (("shrink", lo, d * mu2(e)), ("expand", hi, d * mu1(e))):
                envelope.append({"family": r["family"], "p": _fmt(p), "q": _fmt(q), "side": side,
                                 "slope": r["slope"], "expected": exp, "tolerance": tol,
                                 "pass": bool(abs(r["slope"] - exp) <= tol)})
    return SweepReport(config, rows, envelope, series, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------


def _identity_checks(perturb: complex = 1.0):
    from .field import gaussian, gaussian_window, tensor
    from .hausdorff import (HausdorffKernel, adjoint_pairing_check, boundedness_condition,
                            domination_check, fourier_commutation_check, hardy_kernel, power_kernel,
                            well_definedness_check)
    from .norms import modulation_norm_stft
    from .tf import TFGrid, check_fundamental_identity, check_partial_fundamental_identity, \
        stft_dilation_identity_check

    f1, g1 = gaussian(1, 1.3), gaussian_window(1)
    f2, g2 = tensor(gaussian(1, 1.3), gaussian(1, 0.8)), gaussian_window(2)
    grid1 = TFGrid.centered(1, 8.0, 0.125)
    grid2 = TFGrid.centered(2, 4.0, 0.25)

    def fundamental():
        return check_fundamental_identity(f1, g1, grid1, perturb=perturb).max_error, 1e-6

    def partial2():
        return check_partial_fundamental_identity(f2, g2, [1], grid2, perturb=perturb).max_error, 1e-6

    def dilation():
        return stft_dilation_identity_check(f1, g1, 1.5, grid1).max_error, 1e-6

    def plancherel():
        n = modulation_norm_stft(f1, (2, 2), g1)
        return abs(n - math.sqrt(1.3 / math.sqrt(2))) / n, 1e-6

    def factorization():
        err = 0.0
        for e in ((2, 2), (1, 2), (4, math.inf)):
            a = modulation_norms(gaussian(1, 1.3), [e], spacing=0.25)[0]
            b = modulation_norms(gaussian(1, 0.8), [e], spacing=0.25)[0]
            c = modulation_norms(f2, [e], spacing=0.25)[0]
            err = max(err, abs(c - a * b) / c)
        return err, 1e-6

    K = hardy_kernel()

    def hardy_condition():
        return abs(boundedness_condition(K, (2, 2)).value - 2.0), 1e-4

    def hardy_defined():
        return abs(well_definedness_check(K).value - 1.0), 1e-6

    def divergent_control():
        return float(well_definedness_check(power_kernel(-1.0)).finite), 0.5

    def adjoint():
        return adjoint_pairing_check(K, gaussian(1), gaussian(1, 0.7)), 1e-6

    def commutation():
        return fourier_commutation_check(K, None, gaussian(1)), 1e-5

    def commutation_partial():
        amap = lambda y: np.stack([np.stack([y[:, 0], 0 * y[:, 0]], -1),
                                   np.stack([0 * y[:, 0], y[:, 0] ** 2], -1)], 1)
        K2 = HausdorffKernel(lambda y: np.ones(len(y)), amap, ((0.5, 1.0),), d=2)
        return fourier_commutation_check(K2, [1], f2), 1e-5

    def domination():
        rng = np.random.default_rng(7)
        lam = np.exp(rng.uniform(-6, 6, size=(2000, 2)))
        worst = max(domination_check(lam, e) for e in ((1, 1), (2, 1), (1, math.inf), (4, 2), (math.inf, 1)))
        return max(worst, 0.0), 1e-15

    return [("fundamental_identity_d1", fundamental), ("partial_fundamental_identity_d2_J1", partial2),
            ("stft_dilation_identity", dilation), ("plancherel_M22", plancherel),
            ("tensor_factorization", factorization), ("hardy_condition_22", hardy_condition),
            ("hardy_well_definedness", hardy_defined), ("divergent_kernel_flagged", divergent_control),
            ("adjoint_pairing", adjoint), ("fourier_commutation_full", commutation),
            ("fourier_commutation_partial_d2", commutation_partial), ("gamma_domination", domination)]


def run_identity_suite(corpus: str = "default", *, perturb: complex = 1.0) -> list:
    """Run every identity check; rows are ``(name, error, tolerance, passed)``."""
    if corpus == "empty":
        return []
    if corpus != "default":
        raise ConfigError(f"unknown corpus {corpus!r}")
    rows = []
    for name, check in _identity_checks(perturb):
        err, tol = check()
        err = float(err)
        rows.append((name, err, tol, bool(err < tol)))
    return rows


# ---------------------------------------------------------------------------
# Hausdorff and gamma tables
# ---------------------------------------------------------------------------


def run_hausdorff_check(kernel_file, pairs, *, minkowski: bool = False) -> list:
    """Condition integrals per exponent pair for a kernel definition file."""
    from .field import gaussian
    from .hausdorff import boundedness_condition, minkowski_bound_check, parse_kernel_file, \
        well_definedness_check
    K = parse_kernel_file(kernel_file)
    wd = well_definedness_check(K)
    rows = []
    for p, q in _parse_pairs(pairs):
        e = ExponentPair(p, q)
        bc = boundedness_condition(K, e)
        row = {"p": _fmt(p), "q": _fmt(q), "well_definedness": str(wd), "well_defined": wd.finite,
               "condition": str(bc), "bounded": bc.finite}
        if minkowski:
            if bc.finite and wd.finite:
                row["minkowski_ratio"] = f"{minkowski_bound_check(K, gaussian(K.d), e)['ratio']:.6g}"
            else:
                row["minkowski_ratio"] = ""
        rows.append(row)
    return rows


def gamma_table(pairs, lambdas) -> list:
    rows = []
    for p, q in pairs:
        e = ExponentPair(p, q)
        reg = classify_region(e)
        row = {"p": _fmt(p), "q": _fmt(q), "mu1": mu1(e), "mu2": mu2(e), "region_mu1": reg.mu1_region,
               "region_mu2": reg.mu2_region, "boundary": reg.boundary}
        for lam in lambdas:
            row[f"Gamma({lam:g})"] = gamma(e, lam)
        rows.append(row)
    return rows


def _grid_pairs(n: int) -> tuple:
    vals = np.linspace(0.0, 1.0, n)
    return tuple((ExponentPair.from_inverse(a, b).p, ExponentPair.from_inverse(a, b).q)
                 for a in vals for b in vals)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _table(rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, default=_fmt) + "\n"
    if not rows:
        return ""
    keys = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    widths = {k: max(len(k), *(len(_cell(r[k])) for r in rows)) for k in keys}
    lines = ["  ".join(k.rjust(widths[k]) for k in keys)]
    lines += ["  ".join(_cell(r[k]).rjust(widths[k]) for k in keys) for r in rows]
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, float):
        return "inf" if math.isinf(v) else f"{v:.6g}"
    return str(v)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modspace", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"modspace {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="dilation sweeps with slope fits")
    sw.add_argument("--config", help="config file with one [section] per experiment")
    sw.add_argument("--exp", help="experiment (section) name")
    sw.add_argument("--pq", action="append", help="exponent pair 'p,q' (repeatable; inf allowed)")
    sw.add_argument("--dim", type=int)
    sw.add_argument("--family", action="append", help="g1 | g2 | F (repeatable)")
    sw.add_argument("--lambda-min", type=float)
    sw.add_argument("--lambda-max", type=float)
    sw.add_argument("--lambda-steps", type=int)
    sw.add_argument("--L", dest="L", type=float, help="lattice spacing of F_{lam,L}")
    sw.add_argument("--spacing", type=float, help="time-frequency lattice spacing")
    sw.add_argument("--method", choices=("stft", "box"))
    sw.add_argument("--tolerance", type=float, help="slope tolerance for every check")
    sw.add_argument("--format", choices=("json", "csv", "text"), default="text")
    sw.add_argument("--out", help="report path (default stdout)")
    sw.add_argument("--series", help="also write the (lambda, ratio) series as CSV")

    ve = sub.add_parser("verify", help="identity suite")
    ve.add_argument("--corpus", choices=("default", "empty"), default="default")
    ve.add_argument("--corrupt-phase", action="store_true",
                    help="multiply the STFT by exp(i pi/8) (negative control)")
    ve.add_argument("--format", choices=("json", "csv", "text"), default="text")
    ve.add_argument("--out")

    ha = sub.add_parser("hausdorff", help="condition integrals of a kernel file")
    ha.add_argument("kernel", help="kernel definition file")
    ha.add_argument("--pq", action="append", help="exponent pair 'p,q' (repeatable)")
    ha.add_argument("--minkowski", action="store_true", help="also report the Minkowski ratio")
    ha.add_argument("--format", choices=("json", "csv", "text"), default="text")
    ha.add_argument("--out")

    ga = sub.add_parser("gamma", help="mu1 / mu2 / Gamma tables")
    ga.add_argument("--pq", action="append", help="exponent pair 'p,q' (repeatable)")
    ga.add_argument("--grid", type=int, help="n x n grid of (1/p, 1/q) in [0, 1]^2")
    ga.add_argument("--lambda", dest="lambdas", type=float, action="append",
                    help="evaluate Gamma at this lambda (repeatable)")
    ga.add_argument("--format", choices=("json", "csv", "text"), default="text")
    ga.add_argument("--out")
    return ap


def _cmd_sweep(a) -> int:
    over = {"pq": a.pq, "dim": a.dim, "families": a.family, "lambda_min": a.lambda_min,
            "lambda_max": a.lambda_max, "lambda_steps": a.lambda_steps, "l": a.L,
            "spacing": a.spacing, "method": a.method, "tolerance": a.tolerance}
    cfg = load_sweep_config(a.config, a.exp, over)
    rep = run_dilation_sweep(cfg)
    text = {"json": rep.to_json, "csv": rep.to_csv, "text": rep.to_text}[a.format]()
    _emit(text, a.out)
    if a.series:
        _emit(rep.series_csv(), a.series)
    print(f"runtime {rep.runtime:.1f} s", file=sys.stderr)
    return 0 if rep.passed else 1


def _cmd_verify(a) -> int:
    perturb = np.exp(1j * np.pi / 8) if a.corrupt_phase else 1.0
    rows = run_identity_suite(a.corpus, perturb=perturb)
    table = [{"identity": n, "max_error": e, "tolerance": t, "pass": ok} for n, e, t, ok in rows]
    _emit(_table(table, a.format), a.out)
    return 0 if all(r["pass"] for r in table) else 1


def _cmd_hausdorff(a) -> int:
    rows = run_hausdorff_check(a.kernel, a.pq or ["2,2"], minkowski=a.minkowski)
    _emit(_table(rows, a.format), a.out)
    return 0


def _cmd_gamma(a) -> int:
    if a.grid:
        if a.grid < 2:
            raise ConfigError("grid needs at least two points per axis")
        pairs = _grid_pairs(a.grid)
    else:
        pairs = _parse_pairs(a.pq or [",".join(map(str, p)) for p in DEFAULT_PAIRS])
    lams = a.lambdas or [0.5, 2.0]
    if any(l <= 0 for l in lams):
        raise ConfigError("lambda must be positive")
    _emit(_table(gamma_table(pairs, lams), a.format), a.out)
    return 0


def main(argv=None) -> int:
    from .hausdorff import KernelParseError
    a = _parser().parse_args(argv)
    cmd = {"sweep": _cmd_sweep, "verify": _cmd_verify, "hausdorff": _cmd_hausdorff, "gamma": _cmd_gamma}
    try:
        return cmd[a.command](a)
    except (ConfigError, KernelParseError, OSError) as exc:
        print(f"modspace: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
