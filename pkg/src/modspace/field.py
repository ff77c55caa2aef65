"""Closed-form functions on R^d and their sampling onto uniform grids.

A :class:`FunctionModel` bundles a pointwise evaluator with an optional
closed-form Fourier transform (convention ``e^{-2 pi i t.xi}``) and a support
hint.  Translation, modulation, dilation and tensor products act on the
evaluators directly, so they introduce no discretization error; sampling
happens only when a norm is evaluated.

Points are passed as arrays of shape ``(..., d)``.  For ``d = 1`` plain
arrays of any shape are accepted as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "SupportHint",
    "FunctionModel",
    "SampledGrid",
    "as_points",
    "translate",
    "modulate",
    "dilate",
    "tensor",
    "scale",
    "add",
    "fourier_model",
    "inverse_fourier_model",
    "gaussian",
    "gaussian_window",
    "constant",
    "zero",
    "sample",
    "sample_axes",
    "is_power_of_two",
    "DEFAULT_GRID",
    "MAX_GRID_POINTS",
]

#: default (extent, points per axis) per dimension
DEFAULT_GRID = {1: (32.0, 4096), 2: (16.0, 512)}

#: cap on the number of grid points produced by one sampling call
MAX_GRID_POINTS = 2**25

# relative level below which a Gaussian is treated as zero
_GAUSS_CUT = np.sqrt(13 * np.log(10) / np.pi)


def is_power_of_two(n) -> bool:
    n = int(n)
    return n > 0 and (n & (n - 1)) == 0


def as_points(x, dim: int) -> np.ndarray:
    """Coerce ``x`` to a float array of shape ``(..., dim)``.

    For ``dim == 1`` an array whose last axis does not have length 1 is read
    as a batch of scalar points (a trailing length-1 axis is the coordinate).
    """
    x = np.asarray(x, dtype=float)
    if dim == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        return x[..., None]
    if x.ndim == 0 or x.shape[-1] != dim:
        raise ValueError(f"points must have trailing axis of length {dim}, got shape {x.shape}")
    return x


def _as_vector(v, dim: int) -> np.ndarray:
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.shape == (1,) and dim > 1:
        raise ValueError(f"expected a vector of length {dim}")
    if v.shape != (dim,):
        raise ValueError(f"expected a vector of length {dim}, got shape {v.shape}")
    return v


# ---------------------------------------------------------------------------
# support hints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportHint:
    """Axis-aligned boxes containing the time and frequency supports.

    ``time_exact`` / ``freq_exact`` say whether the box bounds the support
    exactly or only the numerically significant part (effective support,
    relative tail below roughly ``1e-10``).  Infinite bounds mean unknown.
    """

    time_lo: tuple
    time_hi: tuple
    freq_lo: tuple
    freq_hi: tuple
    time_exact: bool = False
    freq_exact: bool = False

    @classmethod
    def centered(cls, dim, time_radius=np.inf, freq_radius=np.inf,
                 time_exact=False, freq_exact=False):
        """Cube hint ``[-r, r]^d`` in time and frequency."""
        tr = tuple(float(time_radius) for _ in range(dim))
        fr = tuple(float(freq_radius) for _ in range(dim))
        return cls(tuple(-r for r in tr), tr, tuple(-r for r in fr), fr,
                   bool(time_exact), bool(freq_exact))

    @property
    def dim(self) -> int:
        return len(self.time_lo)

    @property
    def time_radius(self) -> float:
        """Euclidean radius of a ball about 0 containing the time box."""
        r = np.maximum(np.abs(self.time_lo), np.abs(self.time_hi))
        return float(np.sqrt(np.sum(r**2)))

    @property
    def freq_radius(self) -> float:
        r = np.maximum(np.abs(self.freq_lo), np.abs(self.freq_hi))
        return float(np.sqrt(np.sum(r**2)))

    def time_box(self):
        return np.array(self.time_lo), np.array(self.time_hi)

    def freq_box(self):
        return np.array(self.freq_lo), np.array(self.freq_hi)

    @property
    def bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.time_lo + self.time_hi + self.freq_lo + self.freq_hi)))

    def translated(self, x):
        x = np.asarray(x, float)
        return SupportHint(_tup(np.array(self.time_lo) + x), _tup(np.array(self.time_hi) + x),
                           self.freq_lo, self.freq_hi, self.time_exact, self.freq_exact)

    def modulated(self, xi):
        xi = np.asarray(xi, float)
        return SupportHint(self.time_lo, self.time_hi, _tup(np.array(self.freq_lo) + xi),
                           _tup(np.array(self.freq_hi) + xi), self.time_exact, self.freq_exact)

    def dilated(self, A: np.ndarray, Ainv: np.ndarray):
        # supp f(A.) = A^{-1} supp f ; supp of its transform = A^T supp f^
        tlo, thi = _map_box(Ainv, *self.time_box())
        flo, fhi = _map_box(A.T, *self.freq_box())
        return SupportHint(_tup(tlo), _tup(thi), _tup(flo), _tup(fhi),
                           self.time_exact, self.freq_exact)

    def fourier(self):
        """Hint of the Fourier transform (time box becomes frequency box)."""
        return SupportHint(self.freq_lo, self.freq_hi, tuple(-v for v in self.time_hi),
                           tuple(-v for v in self.time_lo), self.freq_exact, self.time_exact)

    def inverse_fourier(self):
        return SupportHint(tuple(-v for v in self.freq_hi), tuple(-v for v in self.freq_lo),
                           self.time_lo, self.time_hi, self.freq_exact, self.time_exact)

    def partial_fourier(self, axes: Sequence[int], inverse: bool = False):
        tl, th, fl, fh = (list(v) for v in (self.time_lo, self.time_hi, self.freq_lo, self.freq_hi))
        te, fe = self.time_exact, self.freq_exact
        for a in axes:
            if inverse:
                tl[a], th[a], fl[a], fh[a] = -fh[a], -fl[a], tl[a], th[a]
            else:
                tl[a], th[a], fl[a], fh[a] = fl[a], fh[a], -th[a], -tl[a]
        if axes:
            te = fe = te and fe
        return SupportHint(tuple(tl), tuple(th), tuple(fl), tuple(fh), te, fe)

    @staticmethod
    def concat(hints):
        cat = lambda name: tuple(v for h in hints for v in getattr(h, name))
        return SupportHint(cat("time_lo"), cat("time_hi"), cat("freq_lo"), cat("freq_hi"),
                           all(h.time_exact for h in hints), all(h.freq_exact for h in hints))

    @staticmethod
    def union(a, b):
        return SupportHint(_tup(np.minimum(a.time_lo, b.time_lo)), _tup(np.maximum(a.time_hi, b.time_hi)),
                           _tup(np.minimum(a.freq_lo, b.freq_lo)), _tup(np.maximum(a.freq_hi, b.freq_hi)),
                           a.time_exact and b.time_exact, a.freq_exact and b.freq_exact)


def _tup(v):
    return tuple(float(a) for a in v)


def _map_box(M, lo, hi):
    c = 0.5 * (lo + hi)
    r = 0.5 * (hi - lo)
    with np.errstate(invalid="ignore"):
        c2 = M @ np.where(np.isfinite(c), c, 0.0)
        r2 = np.where(M != 0, np.abs(M) * r[None, :], 0.0).sum(axis=1)
    return c2 - r2, c2 + r2


# ---------------------------------------------------------------------------
# function models
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FunctionModel:
    """A complex function on R^d given by closed-form evaluators.

    Parameters
    ----------
    dim : int
        Dimension ``d`` of the domain.
    evaluate : callable
        Maps points of shape ``(..., d)`` to complex values of shape ``(...)``.
    fourier : callable, optional
        Closed-form Fourier transform with the same calling convention.
    support_hint : SupportHint, optional
        Boxes containing the (effective) time and frequency supports.
    factors : tuple of FunctionModel, optional
        One-dimensional factors when the function is an elementary tensor.
        Used by samplers and norm evaluators to factorize work.
    name : str
        Free-form label used in reports.

    Notes
    -----
    Instances are immutable and the evaluators are pure, so a model may be
    shared between threads.
    """

    dim: int
    evaluate: Callable
    fourier: Optional[Callable] = None
    support_hint: Optional[SupportHint] = None
    factors: Optional[tuple] = None
    name: str = ""
    _raw: tuple = dc_field(default=(), repr=False)

    def __post_init__(self):
        if int(self.dim) < 1:
            raise ValueError("dim must be a positive integer")
        d = int(self.dim)
        object.__setattr__(self, "dim", d)
        if self._raw:
            return
        ev, ft = self.evaluate, self.fourier
        object.__setattr__(self, "_raw", (ev, ft))
        object.__setattr__(self, "evaluate", _wrap(ev, d))
        if ft is not None:
            object.__setattr__(self, "fourier", _wrap(ft, d))
        if self.support_hint is None:
            object.__setattr__(self, "support_hint", SupportHint.centered(d))
        elif self.support_hint.dim != d:
            raise ValueError("support hint dimension mismatch")

    def __call__(self, x):
        return self.evaluate(x)

    @property
    def is_tensor(self) -> bool:
        return self.factors is not None


def _wrap(fn, dim):
    def wrapped(x):
        x = as_points(x, dim)
        return np.asarray(fn(x), dtype=complex)
    wrapped.__wrapped__ = fn
    return wrapped


def _check_dim(f: FunctionModel, v, what="vector"):
    return _as_vector(v, f.dim)


def translate(f: FunctionModel, x) -> FunctionModel:
    """Return ``T_x f = f(. - x)``."""
    x = _check_dim(f, x)
    ev = f.evaluate
    ft = f.fourier
    fourier = None
    if ft is not None:
        def fourier(xi):
            return np.exp(-2j * np.pi * (xi @ x)) * ft(xi)
    factors = None
    if f.factors is not None:
        factors = tuple(translate(g, [x[j]]) for j, g in enumerate(f.factors))
    return FunctionModel(f.dim, lambda t: ev(t - x), fourier, f.support_hint.translated(x),
                         factors, name=f"T({f.name})")


def modulate(f: FunctionModel, xi) -> FunctionModel:
    """Return ``M_xi f = e^{2 pi i t.xi} f``."""
    xi = _check_dim(f, xi)
    ev = f.evaluate
    ft = f.fourier
    fourier = None
    if ft is not None:
        def fourier(w):
            return ft(w - xi)
    factors = None
    if f.factors is not None:
        factors = tuple(modulate(g, [xi[j]]) for j, g in enumerate(f.factors))
    return FunctionModel(f.dim, lambda t: np.exp(2j * np.pi * (t @ xi)) * ev(t), fourier,
                         f.support_hint.modulated(xi), factors, name=f"M({f.name})")


def _matrix_of(A, dim):
    """Accept a DilationSpec-like object, a matrix or a scalar."""
    M = getattr(A, "matrix", A)
    M = np.asarray(M, dtype=float)
    if M.ndim == 0:
        M = float(M) * np.eye(dim)
    elif M.ndim == 1:
        M = np.diag(M)
    if M.shape != (dim, dim):
        raise ValueError(f"matrix shape {M.shape} does not match dimension {dim}")
    return M


def dilate(f: FunctionModel, A) -> FunctionModel:
    """Return ``D_A f = f(A .)``.

    ``A`` may be a :class:`~modspace.dilation.DilationSpec`, a square matrix,
    a vector of diagonal entries or a scalar (meaning ``A = a I``).
    """
    M = _matrix_of(A, f.dim)
    det = float(np.linalg.det(M))
    scale_ = max(float(np.max(np.abs(M))), 1e-300) ** f.dim
    if not np.isfinite(det) or abs(det) < 1e-12 * scale_:
        raise ValueError("dilation matrix is singular")
    Minv = np.linalg.inv(M)
    ev, ft = f.evaluate, f.fourier
    fourier = None
    if ft is not None:
        c = 1.0 / abs(det)

        def fourier(xi):
            return c * ft(xi @ Minv)
    factors = None
    if f.factors is not None and np.count_nonzero(M - np.diag(np.diag(M))) == 0:
        factors = tuple(dilate(g, M[j, j]) for j, g in enumerate(f.factors))
    return FunctionModel(f.dim, lambda x: ev(x @ M.T), fourier, f.support_hint.dilated(M, Minv),
                         factors, name=f"D({f.name})")


def tensor(*fs: FunctionModel) -> FunctionModel:
    """Elementary tensor ``(f_1 (x) ... (x) f_m)(x) = prod_j f_j(x_j)``."""
    if not fs:
        raise ValueError("need at least one factor")
    dims = [g.dim for g in fs]
    edges = np.cumsum([0] + dims)
    d = int(edges[-1])
    evs = [g.evaluate for g in fs]

    def evaluate(x):
        out = np.ones(x.shape[:-1], dtype=complex)
        for j, ev in enumerate(evs):
            out = out * ev(x[..., edges[j]:edges[j + 1]])
        return out

    fourier = None
    if all(g.fourier is not None for g in fs):
        fts = [g.fourier for g in fs]

        def fourier(xi):
            out = np.ones(xi.shape[:-1], dtype=complex)
            for j, ft in enumerate(fts):
                out = out * ft(xi[..., edges[j]:edges[j + 1]])
            return out

    leaves = []
    for g in fs:
        if g.dim == 1:
            leaves.append(g)
        elif g.factors is not None:
            leaves.extend(g.factors)
        else:
            leaves = None
            break
    hint = SupportHint.concat([g.support_hint for g in fs])
    return FunctionModel(d, evaluate, fourier, hint, tuple(leaves) if leaves else None,
                         name="(x)".join(g.name for g in fs))


def scale(f: FunctionModel, c: complex) -> FunctionModel:
    """Return ``c f``."""
    c = complex(c)
    ev, ft = f.evaluate, f.fourier
    fourier = (lambda xi: c * ft(xi)) if ft is not None else None
    factors = None
    if f.factors is not None:
        factors = (scale(f.factors[0], c),) + tuple(f.factors[1:])
    return FunctionModel(f.dim, lambda x: c * ev(x), fourier, f.support_hint, factors,
                         name=f"{c}*{f.name}")


def add(f: FunctionModel, g: FunctionModel) -> FunctionModel:
    """Return ``f + g``."""
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    fe, ge = f.evaluate, g.evaluate
    fourier = None
    if f.fourier is not None and g.fourier is not None:
        ff, gf = f.fourier, g.fourier
        fourier = lambda xi: ff(xi) + gf(xi)
    return FunctionModel(f.dim, lambda x: fe(x) + ge(x), fourier,
                         SupportHint.union(f.support_hint, g.support_hint), name=f"{f.name}+{g.name}")


def fourier_model(f: FunctionModel) -> FunctionModel:
    """The Fourier transform of ``f`` as a model (requires ``f.fourier``)."""
    if f.fourier is None:
        raise ValueError("model has no closed-form Fourier transform")
    ev, ft = f.evaluate, f.fourier
    factors = tuple(fourier_model(g) for g in f.factors) if f.factors is not None else None
    return FunctionModel(f.dim, ft, lambda xi: ev(-xi), f.support_hint.fourier(), factors,
                         name=f"F({f.name})")


def inverse_fourier_model(f: FunctionModel) -> FunctionModel:
    """The inverse Fourier transform of ``f``, ``x -> f^(-x)``."""
    if f.fourier is None:
        raise ValueError("model has no closed-form Fourier transform")
    ev, ft = f.evaluate, f.fourier
    factors = tuple(inverse_fourier_model(g) for g in f.factors) if f.factors is not None else None
    return FunctionModel(f.dim, lambda x: ft(-x), ev, f.support_hint.inverse_fourier(), factors,
                         name=f"iF({f.name})")


# ---------------------------------------------------------------------------
# standard models
# ---------------------------------------------------------------------------


def gaussian(dim: int = 1, width: float = 1.0) -> FunctionModel:
    """``exp(-pi |t|^2 / width^2)`` with transform ``width^d exp(-pi width^2 |xi|^2)``."""
    w = float(width)
    if w <= 0:
        raise ValueError("width must be positive")
    hint = SupportHint.centered(dim, _GAUSS_CUT * w, _GAUSS_CUT / w)

    def one(t):
        return np.exp(-np.pi * np.sum(t**2, axis=-1) / w**2)

    def one_ft(xi):
        return w**dim * np.exp(-np.pi * w**2 * np.sum(xi**2, axis=-1))

    factors = tuple(gaussian(1, w) for _ in range(dim)) if dim > 1 else None
    return FunctionModel(dim, one, one_ft, hint, factors, name=f"gauss{w:g}")


def gaussian_window(dim: int = 1) -> FunctionModel:
    """The L^2-normalized Gaussian ``2^{d/4} exp(-pi |t|^2)`` (radial)."""
    if dim == 1:
        g = scale(gaussian(1), 2.0 ** 0.25)
    else:
        g = tensor(*[gaussian_window(1) for _ in range(dim)])
    return replace(g, name="gauss-window")


def constant(dim: int = 1, c: complex = 1.0) -> FunctionModel:
    """The constant function (no Fourier transform as a function)."""
    c = complex(c)
    return FunctionModel(dim, lambda x: np.full(x.shape[:-1], c), None, SupportHint.centered(dim),
                         name=f"const{c}")


def zero(dim: int = 1) -> FunctionModel:
    """The zero function, with exact (degenerate) supports."""
    z = lambda x: np.zeros(x.shape[:-1], dtype=complex)
    return FunctionModel(dim, z, z, SupportHint.centered(dim, 0.0, 0.0, True, True), name="zero")


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SampledGrid:
    """Samples on the uniform grid ``t_k = -T + k Delta``, ``Delta = 2T/N``.

    ``extent`` and ``points_per_axis`` are per-axis tuples; ``values`` has
    shape ``points_per_axis``.
    """

    dim: int
    extent: tuple
    points_per_axis: tuple
    values: np.ndarray

    def __post_init__(self):
        ext = tuple(float(v) for v in np.broadcast_to(np.asarray(self.extent, float), (self.dim,)))
        n = tuple(int(v) for v in np.broadcast_to(np.asarray(self.points_per_axis), (self.dim,)))
        object.__setattr__(self, "extent", ext)
        object.__setattr__(self, "points_per_axis", n)
        if any(e <= 0 for e in ext):
            raise ValueError("extent must be positive")
        if any(k < 8 or not is_power_of_two(k) for k in n):
            raise ValueError("points per axis must be a power of two >= 8")
        vals = np.asarray(self.values, dtype=complex).reshape(n)
        object.__setattr__(self, "values", vals)

    @property
    def spacing(self) -> tuple:
        return tuple(2 * e / k for e, k in zip(self.extent, self.points_per_axis))

    @property
    def cell(self) -> float:
        """Volume ``prod Delta_j`` of one grid cell."""
        return float(np.prod(self.spacing))

    def axes(self):
        return [-e + h * np.arange(k) for e, h, k in zip(self.extent, self.spacing, self.points_per_axis)]

    def points(self) -> np.ndarray:
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def with_values(self, values) -> "SampledGrid":
        return SampledGrid(self.dim, self.extent, self.points_per_axis, values)


def sample(f: FunctionModel, extent=None, N=None, *, method: str = "auto",
           max_points: int = MAX_GRID_POINTS) -> SampledGrid:
    """Sample ``f`` on ``[-T, T)^d`` with ``N`` points per axis.

    Parameters
    ----------
    f : FunctionModel
    extent : float or sequence of float, optional
        Half-width ``T`` (per axis).  Defaults to :data:`DEFAULT_GRID`.
    N : int or sequence of int, optional
        Points per axis, a power of two ``>= 8``.
    method : {"auto", "direct", "spectral"}
        ``"direct"`` evaluates ``f`` at the nodes.  ``"spectral"`` sums the
        closed-form transform on the dual grid (exact up to rounding for
        band-limited ``f`` with bounded support box).  ``"auto"`` picks
        spectral when it is valid.
    max_points : int
        Resource cap on ``N^d``.

    Returns
    -------
    SampledGrid
    """
    d = f.dim
    dT, dN = DEFAULT_GRID.get(d, (8.0, 64))
    T = np.broadcast_to(np.asarray(dT if extent is None else extent, float), (d,))
    n = np.broadcast_to(np.asarray(dN if N is None else N), (d,)).astype(int)
    if np.any(T <= 0):
        raise ValueError("extent must be positive")
    if any(not is_power_of_two(k) or k < 8 for k in n):
        raise ValueError("N must be a power of two >= 8")
    if float(np.prod(n.astype(float))) > max_points:
        raise MemoryError(f"grid of {np.prod(n.astype(float)):.3g} points exceeds cap {max_points}")
    step = 2 * T / n
    vals = sample_axes(f, -T, step, n, method=method, max_points=max_points)
    return SampledGrid(d, tuple(T), tuple(n), vals)


def sample_axes(f: FunctionModel, starts, steps, counts, *, method: str = "auto",
                max_points: int = MAX_GRID_POINTS) -> np.ndarray:
    """Sample ``f`` on the product grid ``starts + steps * arange(counts)``.

    Tensor models are sampled factor by factor and combined by outer
    products.
    """
    d = f.dim
    starts = np.broadcast_to(np.asarray(starts, float), (d,))
    steps = np.broadcast_to(np.asarray(steps, float), (d,))
    counts = np.broadcast_to(np.asarray(counts), (d,)).astype(int)
    if method not in ("auto", "direct", "spectral"):
        raise ValueError(f"unknown sampling method {method!r}")
    if d > 1 and f.factors is not None:
        out = None
        for j, g in enumerate(f.factors):
            v = sample_axes(g, starts[j], steps[j], counts[j], method=method, max_points=max_points)
            out = v if out is None else np.multiply.outer(out, v)
        return out
    if method != "direct":
        plan = _spectral_plan(f, starts, steps, counts, max_points, strict=(method == "auto"))
        if plan is not None:
            return _synthesize(f, starts, steps, counts, plan)
        if method == "spectral":
            raise ValueError("spectral sampling needs a band-limited model with bounded supports")
    return _direct(f, starts, steps, counts, max_points)


def _direct(f, starts, steps, counts, max_points):
    if float(np.prod(counts.astype(float))) > max_points:
        raise MemoryError("grid exceeds the configured point cap")
    axes = [s + h * np.arange(k) for s, h, k in zip(starts, steps, counts)]
    out = np.empty(tuple(counts), dtype=complex)
    if f.dim == 1:
        chunk = 1 << 20
        for i in range(0, counts[0], chunk):
            out[i:i + chunk] = f.evaluate(axes[0][i:i + chunk])
        return out
    rest = axes[1:]
    per = max(1, (1 << 21) // int(np.prod(counts[1:])))
    for i in range(0, counts[0], per):
        pts = np.stack(np.meshgrid(axes[0][i:i + per], *rest, indexing="ij"), axis=-1)
        out[i:i + per] = f.evaluate(pts)
    return out


def _spectral_plan(f, starts, steps, counts, max_points, strict=True):
    h = f.support_hint
    if f.fourier is None or (strict and not h.freq_exact) or not h.bounded:
        return None
    tlo, thi = h.time_box()
    flo, fhi = h.freq_box()
    sizes = []
    for a in range(f.dim):
        nyq = 0.5 / steps[a]
        if flo[a] < -nyq or fhi[a] >= nyq:
            return None
        t1 = starts[a] + (counts[a] - 1) * steps[a]
        # periodization must not fold the support back onto the window
        period = max(t1 - tlo[a], thi[a] - starts[a], (counts[a]) * steps[a]) * 1.001 + steps[a]
        n = 1 << int(np.ceil(np.log2(max(period / steps[a], counts[a], 8))))
        sizes.append(n)
    if float(np.prod(np.asarray(sizes, float))) > max_points:
        return None
    return sizes


def _synthesize(f, starts, steps, counts, sizes):
    # f(t0 + k h) = sum_m delta F(m delta) e^{2 pi i (t0 + k h) m delta},  delta = 1/(n h)
    d = f.dim
    freq_axes = []
    for a in range(d):
        m = np.fft.fftfreq(sizes[a]) * sizes[a]
        freq_axes.append(m / (sizes[a] * steps[a]))
    if d == 1:
        xi = freq_axes[0]
        F = f.fourier(xi)
    else:
        F = f.fourier(np.stack(np.meshgrid(*freq_axes, indexing="ij"), axis=-1))
    for a in range(d):
        shape = [1] * d
        shape[a] = -1
        delta = 1.0 / (sizes[a] * steps[a])
        F = F * (delta * np.exp(2j * np.pi * starts[a] * freq_axes[a])).reshape(shape)
    v = np.fft.ifftn(F) * float(np.prod(sizes))
    return v[tuple(slice(0, c) for c in counts)]
