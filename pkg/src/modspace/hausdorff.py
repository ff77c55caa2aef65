"""Hausdorff operators ``H f(x) = int Phi(y) f(A(y) x) dy``.

The ``y`` integral is discretized once per kernel by Gauss-Legendre rules
on dyadic shells: ``(0, b]`` is split into ``[b 2^{-k-1}, b 2^{-k}]``,
``[a, inf)`` into ``[a 2^k, a 2^{k+1}]``, and bounded intervals away from 0
into equal panels.  Halving the number of shells gives a cheap refinement
test used to separate convergent from divergent condition integrals.

Kernels can be built in code (:class:`HausdorffKernel`, :func:`hardy_kernel`,
...) or read from a small text file (:func:`parse_kernel_file`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from scipy import integrate

from .dilation import gamma, singular_values
from .field import FunctionModel, SupportHint, gaussian, modulate, sample, translate
from .norms import ExponentPair, modulation_norms
from .spectral import normalize_axes, partial_fourier

__all__ = [
    "HausdorffKernel",
    "ConditionIntegral",
    "KernelParseError",
    "hardy_kernel",
    "power_kernel",
    "bump_kernel",
    "zero_kernel",
    "apply",
    "well_definedness_check",
    "boundedness_condition",
    "adjoint_kernel",
    "fourier_kernel",
    "fourier_commutation_check",
    "pairing",
    "adjoint_pairing_check",
    "minkowski_bound_check",
    "domination_check",
    "parse_kernel_file",
    "parse_kernel_text",
    "DIVERGENCE_RATIO",
    "APPLY_EXTENT",
]

#: refinement ratio above which a condition integral is declared divergent
DIVERGENCE_RATIO = 1.01
#: time/frequency boxes of ``apply`` outputs are clipped to this half-width
APPLY_EXTENT = 64.0
_MIN_LAMBDA = 1e-12


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


def _axis_rule(lo: float, hi: float, levels: int, order: int):
    """Nodes, weights and refinement depth for one ``y`` axis."""
    u, w = np.polynomial.legendre.leggauss(order)
    panels = []
    if not lo < hi:
        raise ValueError("empty integration domain")
    if math.isinf(lo):
        raise ValueError("domain must be bounded below")
    if lo == 0.0 and math.isinf(hi):
        n0, w0, d0 = _axis_rule(0.0, 1.0, levels, order)
        n1, w1, d1 = _axis_rule(1.0, hi, levels, order)
        return np.concatenate([n0, n1]), np.concatenate([w0, w1]), np.concatenate([d0, d1])
    if lo == 0.0:
        for k in range(levels):
            panels.append((hi * 2.0 ** (-k - 1), hi * 2.0**-k, k))
    elif math.isinf(hi):
        if lo < 0:
            raise ValueError("unbounded domains must start at a nonnegative point")
        for k in range(levels):
            panels.append((lo * 2.0**k, lo * 2.0 ** (k + 1), k))
    else:
        edges = np.linspace(lo, hi, max(1, levels // 4) + 1)
        panels = [(a, b, 0) for a, b in zip(edges[:-1], edges[1:])]
    nodes, weights, depth = [], [], []
    for a, b, k in panels:
        nodes.append(0.5 * (a + b) + 0.5 * (b - a) * u)
        weights.append(0.5 * (b - a) * w)
        depth.append(np.full(order, k))
    return np.concatenate(nodes), np.concatenate(weights), np.concatenate(depth)


def _product_rule(domain, levels, order):
    rules = [_axis_rule(lo, hi, levels, order) for lo, hi in domain]
    grids = np.meshgrid(*[r[0] for r in rules], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=-1)
    W = np.ones(1)
    D = np.zeros(1, dtype=int)
    for r in rules:
        W = np.multiply.outer(W, r[1]).ravel()
        D = np.maximum.outer(D, r[2]).ravel()
    return nodes, W, D


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HausdorffKernel:
    """Weight ``Phi`` and matrix field ``A(y)`` with a fixed ``y`` quadrature.

    Parameters
    ----------
    phi : callable
        ``phi(y)`` for ``y`` of shape ``(m, n)``; returns ``(m,)`` values.
    amap : callable
        ``amap(y)`` for ``y`` of shape ``(m, n)``; returns ``(m, d, d)``.
    domain : tuple of (lo, hi)
        Integration box in ``y`` (``lo`` may be 0, ``hi`` may be ``inf``).
    d, n : int
        Space and parameter dimensions.
    levels, order : int
        Dyadic shells per unbounded/singular end and Gauss nodes per shell.
    """

    phi: Callable
    amap: Callable
    domain: tuple
    d: int = 1
    n: int = 1
    levels: int = 32
    order: int = 8
    name: str = ""
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)
    depth: np.ndarray = field(init=False, repr=False)
    phi_values: np.ndarray = field(init=False, repr=False)
    matrices: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        dom = tuple((float(a), float(b)) for a, b in self.domain)
        if len(dom) != self.n:
            raise ValueError("domain must have one interval per y coordinate")
        if self.n > 2:
            raise ValueError("product quadrature supports n <= 2")
        object.__setattr__(self, "domain", dom)
        y, w, dep = _product_rule(dom, self.levels, self.order)
        if np.any(w <= 0):
            raise ValueError("quadrature weights must be positive")
        ph = np.asarray(self.phi(y), dtype=complex).reshape(len(y))
        mats = np.asarray(self.amap(y), dtype=float).reshape(len(y), self.d, self.d)
        for name, v in (("nodes", y), ("weights", w), ("depth", dep), ("phi_values", ph), ("matrices", mats)):
            object.__setattr__(self, name, v)
        lam = self.singular_values
        if np.any(lam <= _MIN_LAMBDA):
            raise ValueError("A(y) is (nearly) singular at some quadrature node")

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def diagonal(self) -> bool:
        M = self.matrices
        off = M - M * np.eye(self.d)[None]
        return bool(np.all(off == 0))

    @property
    def specs(self) -> list:
        """Per-node SVD factors of ``A(y)``."""
        cached = self.__dict__.get("_specs")
        if cached is None:
            cached = [singular_values(M) for M in self.matrices]
            self.__dict__["_specs"] = cached
        return cached

    @property
    def singular_values(self) -> np.ndarray:
        """``(m, d)`` singular values ``lam_j(y)`` at the nodes."""
        cached = self.__dict__.get("_lam")
        if cached is None:
            if self.diagonal:
                cached = np.abs(np.diagonal(self.matrices, axis1=1, axis2=2))
            else:
                cached = np.array([s.lam for s in self.specs])
            self.__dict__["_lam"] = cached
        return cached


def _power_amap(exponents, d, n):
    a = np.broadcast_to(np.asarray(exponents, float), (d,))

    def amap(y):
        y = np.asarray(y, float)
        cols = [y[:, min(j, n - 1)] ** a[j] for j in range(d)]
        out = np.zeros((len(y), d, d))
        for j in range(d):
            out[:, j, j] = cols[j]
        return out
    return amap


def hardy_kernel(d: int = 1, **kw) -> HausdorffKernel:
    """``Phi = 1`` on ``(0, 1)`` and ``A(y) = y I``: the Hardy averaging operator."""
    return HausdorffKernel(lambda y: np.ones(len(y)), _power_amap(1.0, d, 1), ((0.0, 1.0),), d, 1,
                           name="hardy", **kw)


def power_kernel(a: float, domain=(0.0, 1.0), exponents=1.0, d: int = 1, **kw) -> HausdorffKernel:
    """``Phi(y) = y^a`` on ``domain`` with ``A(y) = diag(y^{exponents})``."""
    return HausdorffKernel(lambda y: y[:, 0] ** a, _power_amap(exponents, d, 1), (tuple(domain),), d, 1,
                           name=f"power({a:g})", **kw)


def bump_kernel(center: float, width: float, exponents=1.0, d: int = 1, **kw) -> HausdorffKernel:
    """Unit-mass smooth bump on ``(center - width, center + width)``; ``A(y) = diag(y^{exponents})``."""
    if width <= 0 or center - width < 0:
        raise ValueError("bump must sit inside (0, inf)")
    u, w = np.polynomial.legendre.leggauss(64)
    raw = lambda t: np.where(np.abs(t) < 1, np.exp(-1.0 / np.maximum(1e-300, 1 - t * t)), 0.0)
    mass = width * float(np.sum(w * raw(u)))
    return HausdorffKernel(lambda y: raw((y[:, 0] - center) / width) / mass, _power_amap(exponents, d, 1),
                           ((center - width, center + width),), d, 1, name="bump", **kw)


def zero_kernel(d: int = 1, **kw) -> HausdorffKernel:
    return HausdorffKernel(lambda y: np.zeros(len(y)), _power_amap(1.0, d, 1), ((0.0, 1.0),), d, 1,
                           name="zero", **kw)


# ---------------------------------------------------------------------------
# condition integrals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionIntegral:
    """Quadrature value of a condition integral with its refinement verdict."""

    value: float
    finite: bool
    refinement_ratio: float

    def __float__(self) -> float:
        return self.value if self.finite else math.inf

    def __str__(self) -> str:
        return f"{self.value:.6g}" if self.finite else "divergent"


def _condition(K: HausdorffKernel, weight: np.ndarray) -> ConditionIntegral:
    vals = np.abs(K.phi_values) * weight * K.weights
    if not np.all(np.isfinite(vals)):
        return ConditionIntegral(math.inf, False, math.inf)
    full = float(np.sum(vals))
    half = float(np.sum(vals[K.depth < K.levels // 2]))
    if full == 0.0:
        return ConditionIntegral(0.0, True, 1.0)
    ratio = full / half if half > 0 else math.inf
    finite = ratio <= DIVERGENCE_RATIO
    return ConditionIntegral(full if finite else math.inf, finite, ratio)


def well_definedness_check(K: HausdorffKernel) -> ConditionIntegral:
    """``int |Phi(y)| prod_j min(1, 1/lam_j(y)) dy``."""
    lam = K.singular_values
    return _condition(K, np.prod(np.minimum(1.0, 1.0 / lam), axis=1))


def boundedness_condition(K: HausdorffKernel, e) -> ConditionIntegral:
    """``int |Phi(y)| prod_j Gamma_{p,q}(lam_j(y)) dy``."""
    lam = K.singular_values
    return _condition(K, np.prod(gamma(e, lam), axis=1))


def domination_check(lams, e) -> float:
    """Largest value of ``prod min(1, 1/lam) - prod Gamma(lam)`` (nonpositive when dominated)."""
    lams = np.atleast_2d(np.asarray(lams, float))
    lhs = np.prod(np.minimum(1.0, 1.0 / lams), axis=1)
    rhs = np.prod(gamma(e, lams), axis=1)
    return float(np.max(lhs - rhs))


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------


def _node_kernel(K: HausdorffKernel, phi_values, matrices, name) -> HausdorffKernel:
    # same quadrature, new weights/matrices
    new = object.__new__(HausdorffKernel)
    for k, v in K.__dict__.items():
        if not k.startswith("_"):
            object.__setattr__(new, k, v)
    object.__setattr__(new, "phi_values", np.asarray(phi_values, complex))
    object.__setattr__(new, "matrices", np.asarray(matrices, float))
    object.__setattr__(new, "name", name)
    return new


def _output_hint(K, f):
    h = f.support_hint
    if h is None:
        return None
    Ainv = np.linalg.inv(K.matrices)
    live = K.phi_values != 0
    if not np.any(live):
        return SupportHint.centered(K.d, 0.0, 0.0, True, True)
    out = None
    for A, B in zip(K.matrices[live], Ainv[live]):
        g = h.dilated(A, B)
        out = g if out is None else SupportHint.union(out, g)
    c = lambda v: tuple(float(np.clip(t, -APPLY_EXTENT, APPLY_EXTENT)) for t in v)
    clipped = any(abs(t) > APPLY_EXTENT for t in out.time_lo + out.time_hi + out.freq_lo + out.freq_hi)
    return SupportHint(c(out.time_lo), c(out.time_hi), c(out.freq_lo), c(out.freq_hi),
                       out.time_exact and not clipped, False)


def apply(K: HausdorffKernel, f: FunctionModel, *, check: bool = True) -> FunctionModel:
    """``x -> sum_i w_i Phi(y_i) f(A(y_i) x)`` (no closed-form transform).

    Raises
    ------
    ValueError
        If the well-definedness integral of ``K`` diverges.
    """
    if f.dim != K.d:
        raise ValueError("dimension mismatch between kernel and function")
    if check:
        wd = well_definedness_check(K)
        if not wd.finite:
            raise ValueError(f"kernel is not well defined (refinement ratio {wd.refinement_ratio:.3g})")
    c = K.weights * K.phi_values
    live = np.flatnonzero(c != 0)
    c = c[live]
    mats = K.matrices[live]
    ev = f.evaluate
    d = K.d

    def evaluate(x):
        P = x.reshape(-1, d)
        out = np.zeros(len(P), dtype=complex)
        step = max(1, (1 << 20) // max(1, len(P)))
        for i in range(0, len(c), step):
            pts = np.einsum("mij,pj->mpi", mats[i:i + step], P)
            vals = ev(pts.reshape(-1, d)).reshape(pts.shape[:2])
            out += c[i:i + step] @ vals
        return out.reshape(x.shape[:-1])

    return FunctionModel(d, evaluate, None, _output_hint(K, f), name=f"H[{K.name}]{f.name}")


def adjoint_kernel(K: HausdorffKernel) -> HausdorffKernel:
    """``Phi~ = conj(Phi) / |det A|`` with ``A(y)^{-1}``."""
    det = np.abs(np.linalg.det(K.matrices))
    return _node_kernel(K, np.conj(K.phi_values) / det, np.linalg.inv(K.matrices), f"adj({K.name})")


def fourier_kernel(K: HausdorffKernel, J=None) -> HausdorffKernel:
    """Kernel ``K_J`` with ``F_J H_K = H_{K_J} F_J`` (1-based ``J``, ``None`` = all).

    For diagonal ``A = diag(lam)``: weight ``Phi prod_{j in J} lam_j^{-1}``
    and matrix with ``lam_j^{-1}`` on ``J``.  For ``J`` = all axes and any
    ``A``: weight ``Phi / |det A|`` and matrix ``(A^T)^{-1}``.
    """
    axes = normalize_axes(J, K.d)
    if not axes:
        return K
    if len(axes) == K.d:
        det = np.abs(np.linalg.det(K.matrices))
        return _node_kernel(K, K.phi_values / det, np.linalg.inv(np.transpose(K.matrices, (0, 2, 1))),
                            f"F({K.name})")
    if not K.diagonal:
        raise ValueError("partial Fourier commutation needs a diagonal matrix field")
    M = K.matrices.copy()
    w = K.phi_values.copy()
    for a in axes:
        w = w / np.abs(M[:, a, a])
        M[:, a, a] = 1.0 / M[:, a, a]
    return _node_kernel(K, w, M, f"F{tuple(a + 1 for a in axes)}({K.name})")


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def pairing(u: FunctionModel, v: FunctionModel, *, extent: float = 12.0, N: int = None) -> complex:
    """``<u, v> = int u conj(v)``.

    In one dimension adaptive quadrature is used (split at 0 to resolve
    the kink/log singularities of Hausdorff outputs); otherwise a Riemann
    sum on ``[-extent, extent)^d``.
    """
    if u.dim == 1:
        def part(fn):
            tot = 0.0
            for a, b in ((-np.inf, -1.0), (-1.0, 0.0), (0.0, 1.0), (1.0, np.inf)):
                tot += integrate.quad(fn, a, b, limit=400, epsabs=1e-13, epsrel=1e-12)[0]
            return tot
        prod = lambda t: complex(np.ravel(u(np.array([[t]])))[0] * np.conj(np.ravel(v(np.array([[t]])))[0]))
        return part(lambda t: prod(t).real) + 1j * part(lambda t: prod(t).imag)
    N = N or (256 if u.dim == 2 else 64)
    a = sample(u, extent, N, method="direct")
    b = sample(v, extent, N, method="direct")
    return complex(np.sum(a.values * np.conj(b.values)) * a.cell)


def adjoint_pairing_check(K: HausdorffKernel, f: FunctionModel, g: FunctionModel, **kw) -> float:
    """Relative gap ``|<Hf, g> - conj(<H* g, f>)| / |<Hf, g>|``."""
    lhs = pairing(apply(K, f), g, **kw)
    rhs = np.conj(pairing(apply(adjoint_kernel(K), g), f, **kw))
    return float(abs(lhs - rhs) / max(abs(lhs), 1e-300))


def _compact(K: HausdorffKernel) -> bool:
    return all(lo > 0 and math.isfinite(hi) for lo, hi in K.domain)


def fourier_commutation_check(K: HausdorffKernel, J, f: FunctionModel, *, mode: str = "auto",
                              extent: float = None, N: int = None, tests=None) -> float:
    """Max error of ``F_J H_K f = H_{K_J} F_J f``.

    ``mode="pointwise"`` compares the grid FFT of sampled ``H_K f`` with
    ``H_{K_J} F_J f`` evaluated at the dual grid.  ``mode="weak"`` compares
    both sides paired against Gaussian wave packets ``phi`` (using
    ``<F_J u, phi> = <u, F_J^{-1} phi>``) and is used for kernels reaching
    ``y -> 0`` or ``y -> inf``, whose outputs decay too slowly for a
    truncated FFT.  ``"auto"`` chooses pointwise for compact ``y`` domains.
    """
    axes = normalize_axes(J, K.d)
    if not axes:
        return 0.0
    KJ = fourier_kernel(K, J)
    Jl = [a + 1 for a in axes]
    FJf = partial_fourier(f, Jl)
    if mode == "auto":
        mode = "pointwise" if _compact(K) else "weak"
    if mode == "pointwise":
        T = extent or (8.0 if K.d == 1 else 6.0)
        n = N or (1024 if K.d == 1 else 128)
        grid = sample(apply(K, f), T, n, method="direct")
        lhs = partial_fourier(grid, Jl)
        rhs = apply(KJ, FJf)(lhs.points())
        return float(np.max(np.abs(lhs.values - rhs)))
    if mode != "weak":
        raise ValueError(f"unknown mode {mode!r}")
    if tests is None:
        tests = [(0.0, 0.0), (0.5, 0.0), (0.0, 0.75), (-1.0, 0.5)]
    Hf = apply(K, f)
    Hhat = apply(KJ, FJf)
    err = 0.0
    for a, b in tests:
        phi = modulate(translate(gaussian(K.d), np.full(K.d, b)), np.full(K.d, a))
        lhs = pairing(Hf, partial_fourier(phi, Jl, inverse=True))
        rhs = pairing(Hhat, phi)
        err = max(err, abs(lhs - rhs))
    return float(err)


def minkowski_bound_check(K: HausdorffKernel, f: FunctionModel, e, window: FunctionModel = None,
                          grid=None, *, spacing: float = None) -> dict:
    """``||H f|| / (condition(K, e) ||f||)`` in ``M^{p,q}``."""
    e = ExponentPair.coerce(e)
    cond = boundedness_condition(K, e)
    if not cond.finite:
        raise ValueError("boundedness condition diverges")
    nf = modulation_norms(f, [e], window, grid, spacing=spacing)[0]
    if np.all(K.phi_values == 0):
        return {"numerator": 0.0, "condition": cond.value, "norm_f": nf, "ratio": 0.0}
    nh = modulation_norms(apply(K, f), [e], window, grid, spacing=spacing)[0]
    return {"numerator": nh, "condition": cond.value, "norm_f": nf, "ratio": nh / (cond.value * nf)}


# ---------------------------------------------------------------------------
# kernel files
# ---------------------------------------------------------------------------


class KernelParseError(ValueError):
    """Malformed kernel definition (message carries the line number)."""


_KEYS = ("d", "n", "phi", "A", "domain", "levels", "order", "nodes")


def _num(tok: str) -> float:
    t = tok.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return math.inf
    return float(t)


def parse_kernel_text(text: str, base: Path = None) -> HausdorffKernel:
    """Build a kernel from ``key = value`` lines (``#`` starts a comment).

    Keys
    ----
    ``d``       space dimension (default 1)
    ``n``       parameter dimension, 1 or 2 (default 1)
    ``phi``     ``hardy`` | ``zero`` | ``const c`` | ``power a`` | ``bump c w`` |
                ``table:<path>`` (columns ``y re [im]``, linear interpolation)
    ``A``       ``scalar a`` for ``y^a I`` or ``diag a_1 ... a_d`` for
                ``diag(y_k^{a_j})`` with ``k = min(j, n)``
    ``domain``  ``lo hi`` per ``y`` coordinate, separated by ``;`` (``inf`` allowed)
    ``levels``  dyadic shells per singular end (default 32)
    ``order``   Gauss nodes per shell (default 8)
    ``nodes``   alias of ``order``
    """
    cfg = {}
    where = {}
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise KernelParseError(f"line {i}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        if k not in _KEYS:
            raise KernelParseError(f"line {i}: unknown key {k!r}")
        if k in cfg:
            raise KernelParseError(f"line {i}: duplicate key {k!r}")
        cfg[k], where[k] = v, i

    def err(k, msg):
        raise KernelParseError(f"line {where.get(k, 0)}: {msg}")

    try:
        d = int(cfg.get("d", "1"))
        n = int(cfg.get("n", "1"))
        levels = int(cfg.get("levels", "32"))
        order = int(cfg.get("order", cfg.get("nodes", "8")))
    except ValueError as exc:
        bad = next(k for k in ("d", "n", "levels", "order", "nodes") if k in cfg and not cfg[k].lstrip("-").isdigit())
        err(bad, f"integer expected ({exc})")
    if d < 1 or n not in (1, 2):
        err("d" if d < 1 else "n", "need d >= 1 and n in {1, 2}")
    if "phi" not in cfg:
        raise KernelParseError("line 0: missing key 'phi'")

    ptoks = cfg["phi"].split()
    kind = ptoks[0]
    dom_default = None
    try:
        if kind == "hardy":
            phi = lambda y: np.ones(len(y))
            dom_default = "0 1"
        elif kind == "zero":
            phi = lambda y: np.zeros(len(y))
        elif kind == "const":
            c = _num(ptoks[1])
            phi = lambda y: np.full(len(y), c)
        elif kind == "power":
            a = _num(ptoks[1])
            phi = lambda y: np.prod(y ** a, axis=1)
        elif kind == "bump":
            c, w = _num(ptoks[1]), _num(ptoks[2])
            bk = bump_kernel(c, w)
            phi = lambda y: bk.phi(y[:, :1])
            dom_default = f"{c - w} {c + w}"
        elif kind.startswith("table:"):
            path = Path(kind[6:])
            if base is not None and not path.is_absolute():
                path = base / path
            tab = np.loadtxt(path, ndmin=2)
            ty = tab[:, 0]
            tv = tab[:, 1] + (1j * tab[:, 2] if tab.shape[1] > 2 else 0)
            phi = lambda y: np.interp(y[:, 0], ty, tv.real, 0, 0) + 1j * np.interp(y[:, 0], ty, tv.imag, 0, 0)
            dom_default = f"{ty[0]} {ty[-1]}"
        else:
            err("phi", f"unknown phi {kind!r}")
    except (IndexError, ValueError, OSError) as exc:
        if isinstance(exc, KernelParseError):
            raise
        err("phi", f"bad phi specification ({exc})")

    atoks = cfg.get("A", "scalar 1").split()
    try:
        if atoks[0] == "scalar":
            amap = _power_amap(_num(atoks[1]), d, n)
        elif atoks[0] == "diag":
            ex = [_num(t) for t in atoks[1:]]
            if len(ex) != d:
                err("A", f"diag needs {d} exponents")
            amap = _power_amap(ex, d, n)
        else:
            err("A", f"unknown matrix form {atoks[0]!r}")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, KernelParseError):
            raise
        err("A", f"bad matrix specification ({exc})")

    dspec = cfg.get("domain", dom_default)
    if dspec is None:
        err("domain", "missing domain")
    try:
        domain = tuple(tuple(_num(t) for t in part.split()) for part in dspec.split(";"))
        if any(len(iv) != 2 for iv in domain):
            raise ValueError("each interval needs 'lo hi'")
    except ValueError as exc:
        err("domain", f"bad domain ({exc})")
    try:
        return HausdorffKernel(phi, amap, domain, d, n, levels, order, name=kind)
    except ValueError as exc:
        raise KernelParseError(f"line {where.get('domain', 0)}: {exc}") from None


def parse_kernel_file(path) -> HausdorffKernel:
    path = Path(path)
    return parse_kernel_text(path.read_text(), base=path.parent)
