"""Mixed-norm and modulation-space norm evaluators.

Every lattice ``L^p`` sum carries the Riemann weight ``h^{d/p}`` so that
discrete norms converge to the continuous ones; ``p = inf`` is a lattice
supremum.  Mixed norms integrate over time first (exponent ``p``) and then
over frequency (exponent ``q``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import FunctionModel, SampledGrid, fourier_model, gaussian_window, sample
from .spectral import (FrequencyPartition, box_lp_norms, build_partition, grid_fourier,
                       normalize_axes, partial_fourier)
from .tf import TFCoefficients, TFGrid, stft_blocks

__all__ = [
    "ExponentPair",
    "lp_norm",
    "mixed_norm",
    "mixed_norm_array",
    "modulation_norm_stft",
    "modulation_norms",
    "modulation_norm_box",
    "modulation_norms_box",
    "sample_for_boxes",
    "local_fl_q_norm",
    "lqp_norm",
    "partial_fourier_modulation_norm",
    "DEFAULT_SPACING",
    "DEFAULT_BOX_K",
]

#: default time-frequency lattice spacing per dimension
DEFAULT_SPACING = {1: 0.125, 2: 0.25}

#: default partition index radius per dimension
DEFAULT_BOX_K = {1: 64, 2: 16}


def _inv(v: float) -> float:
    return 0.0 if np.isinf(v) else 1.0 / v


@dataclass(frozen=True)
class ExponentPair:
    """Exponents ``(p, q)`` in ``[1, inf]``.

    The reciprocals ``ip = 1/p`` and ``iq = 1/q`` are stored as given when the
    pair is built with :meth:`from_inverse`, so grids in the ``(1/p, 1/q)``
    square are represented without round-off.
    """

    p: float
    q: float
    ip: float = None
    iq: float = None

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (1.0 <= p <= np.inf and 1.0 <= q <= np.inf):
            raise ValueError(f"exponents must lie in [1, inf], got ({p}, {q})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "ip", _inv(p) if self.ip is None else float(self.ip))
        object.__setattr__(self, "iq", _inv(q) if self.iq is None else float(self.iq))

    @classmethod
    def from_inverse(cls, ip: float, iq: float) -> "ExponentPair":
        ip, iq = float(ip), float(iq)
        if not (0.0 <= ip <= 1.0 and 0.0 <= iq <= 1.0):
            raise ValueError("reciprocal exponents must lie in [0, 1]")
        return cls(np.inf if ip == 0 else 1.0 / ip, np.inf if iq == 0 else 1.0 / iq, ip, iq)

    @classmethod
    def coerce(cls, e) -> "ExponentPair":
        if isinstance(e, ExponentPair):
            return e
        if isinstance(e, str):
            a, b = e.replace("(", "").replace(")", "").split(",")
            return cls(float(a), float(b))
        p, q = e
        return cls(p, q)

    def __str__(self):
        fmt = lambda v: "inf" if np.isinf(v) else f"{v:g}"
        return f"({fmt(self.p)},{fmt(self.q)})"

    def key(self) -> tuple:
        return (self.p, self.q)


# ---------------------------------------------------------------------------
# lattice norms
# ---------------------------------------------------------------------------


def lp_norm(values, p: float, cell: float = 1.0, axis=None) -> np.ndarray:
    """Riemann ``L^p`` norm ``(sum |v|^p cell)^{1/p}``; ``max |v|`` for ``p = inf``."""
    a = np.abs(np.asarray(values))
    if np.isinf(p):
        return a.max(axis=axis) if a.size else np.float64(0.0)
    return (np.sum(a**p, axis=axis) * cell) ** (1.0 / p)


def mixed_norm_array(values, e, cell_x: float, cell_xi: float, d: int) -> float:
    """Mixed ``L^{p,q}`` norm of an array with ``d`` time axes followed by ``d`` frequency axes."""
    e = ExponentPair.coerce(e)
    v = np.asarray(values)
    inner = lp_norm(v, e.p, cell_x, axis=tuple(range(d)))
    return float(lp_norm(inner, e.q, cell_xi))


def mixed_norm(F: TFCoefficients, e) -> float:
    """Mixed ``L^{p,q}`` norm of lattice STFT values (time inside, frequency outside)."""
    g = F.grid
    return mixed_norm_array(F.values, e, g.cell_x, g.cell_xi, g.dim)


def _lattice(f, window, grid, spacing):
    if grid is not None:
        return grid
    h = DEFAULT_SPACING.get(f.dim, 0.25) if spacing is None else spacing
    return TFGrid.covering(f, window, h)


def modulation_norms(f: FunctionModel, pairs: Iterable, window: FunctionModel = None,
                     grid: TFGrid = None, *, spacing: float = None, band=None) -> list:
    """``||V_window f||_{L^{p,q}}`` for several exponent pairs in one pass.

    Parameters
    ----------
    f : FunctionModel
    pairs : iterable of ExponentPair or (p, q)
    window : FunctionModel, optional
        Tensor-product window; defaults to the normalized Gaussian.
    grid : TFGrid, optional
        Lattice; defaults to the smallest lattice with spacing ``spacing``
        (see :data:`DEFAULT_SPACING`) covering the essential STFT support.
    band : float or sequence, optional
        Overrides the frequency extent of ``f`` used to choose sampling steps.

    Returns
    -------
    list of float
    """
    pairs = [ExponentPair.coerce(e) for e in pairs]
    window = gaussian_window(f.dim) if window is None else window
    grid = _lattice(f, window, grid, spacing)
    d = f.dim
    ps = sorted(set(e.p for e in pairs))
    acc = {p: np.zeros(grid.nxi) for p in ps}
    xaxes = tuple(range(0, 2 * d, 2))
    for sl, blk in stft_blocks(f, window, grid, band=band, phase=False):
        a = np.abs(blk)
        xs = tuple(sl[1::2])
        for p in ps:
            if np.isinf(p):
                acc[p][xs] = np.maximum(acc[p][xs], a.max(axis=xaxes))
            else:
                acc[p][xs] += np.sum(a**p, axis=xaxes)
    out = []
    for e in pairs:
        s = acc[e.p]
        inner = s if np.isinf(e.p) else (s * grid.cell_x) ** (1.0 / e.p)
        out.append(float(lp_norm(inner, e.q, grid.cell_xi)))
    return out


def modulation_norm_stft(f: FunctionModel, e, window: FunctionModel = None, grid: TFGrid = None,
                         *, spacing: float = None) -> float:
    """Modulation norm ``||V_window f||_{L^{p,q}}``; see :func:`modulation_norms`."""
    return modulation_norms(f, [e], window, grid, spacing=spacing)[0]


# ---------------------------------------------------------------------------
# frequency-uniform decomposition
# ---------------------------------------------------------------------------


def sample_for_boxes(f: FunctionModel, *, margin: float = 2.0, max_points: int = 2**23) -> SampledGrid:
    """Sample ``f`` on a grid that contains its time box and resolves every box piece.

    The Nyquist frequency exceeds the spectral extent by ``margin`` so the
    pieces touching the spectrum are resolved.
    """
    h = f.support_hint
    tlo, thi = h.time_box()
    flo, fhi = h.freq_box()
    if not np.all(np.isfinite(np.concatenate([tlo, thi, flo, fhi]))):
        raise ValueError("model needs bounded support hints")
    T = np.maximum(np.abs(tlo), np.abs(thi)) * 1.02 + 1.0
    X = np.maximum(np.abs(flo), np.abs(fhi)) + margin
    N = [1 << int(np.ceil(np.log2(max(8, 4 * t * x)))) for t, x in zip(T, X)]
    return sample(f, tuple(T), tuple(N), max_points=max_points)


def modulation_norms_box(f, pairs, partition: FrequencyPartition = None, *, K: int = None,
                         oversample: float = 12.0, leak_tol: float = 1e-6) -> list:
    """Discrete modulation norms ``(sum_k ||box_k f||_p^q)^{1/q}`` for several pairs.

    Parameters
    ----------
    f : SampledGrid or FunctionModel
        Models are sampled with :func:`sample_for_boxes`.
    pairs : iterable
    partition : FrequencyPartition, optional
        Defaults to index radius :data:`DEFAULT_BOX_K`, enlarged when the
        spectrum extends beyond the covered box.
    oversample : float
        Resampling density for the ``L^p`` sums of each piece.
    leak_tol : float
        Maximal relative spectral energy allowed outside the covered box.

    Raises
    ------
    ValueError
        If the spectrum leaks out of the covered box.
    """
    pairs = [ExponentPair.coerce(e) for e in pairs]
    grid = f if isinstance(f, SampledGrid) else sample_for_boxes(f)
    if partition is None:
        k = DEFAULT_BOX_K.get(grid.dim, 8) if K is None else int(K)
        if K is None:
            k = max(k, int(np.ceil(max(grid.points_per_axis[a] / (4 * grid.extent[a])
                                       for a in range(grid.dim)))) + 2)
        partition = build_partition(grid.dim, k)
    ps = sorted(set(e.p for e in pairs))
    ks, norms, leak = box_lp_norms(grid, partition, ps, oversample=oversample)
    if leak > leak_tol:
        raise ValueError(f"spectral leakage {leak:.2e} outside the covered frequency box")
    out = []
    for e in pairs:
        row = norms[ps.index(e.p)] if norms.size else np.zeros(0)
        out.append(float(lp_norm(row, e.q)) if row.size else 0.0)
    return out


def modulation_norm_box(f, e, partition: FrequencyPartition = None, **kw) -> float:
    """Discrete modulation norm of ``f`` (see :func:`modulation_norms_box`)."""
    return modulation_norms_box(f, [e], partition, **kw)[0]


# ---------------------------------------------------------------------------
# local equivalents and mixed Lebesgue norms
# ---------------------------------------------------------------------------


def local_fl_q_norm(f: FunctionModel, q: float, grid=None) -> float:
    """``||F f||_{L^q}`` on a frequency grid.

    Parameters
    ----------
    f : FunctionModel
        Should be compactly supported (exact time hint); a warning is issued
        otherwise.
    q : float
    grid : (extent, N), optional
        Frequency grid; by default it covers the effective spectrum with
        spacing at most ``1/(8 R)`` where ``R`` is the time radius.
    """
    h = f.support_hint
    if not h.time_exact:
        warnings.warn("local_fl_q_norm expects a compactly supported function", RuntimeWarning)
    if grid is None:
        flo, fhi = h.freq_box()
        tlo, thi = h.time_box()
        X = np.maximum(np.abs(flo), np.abs(fhi))
        R = np.maximum(np.abs(tlo), np.abs(thi))
        if not np.all(np.isfinite(np.concatenate([X, R]))):
            raise ValueError("model needs bounded support hints")
        N = [1 << int(np.ceil(np.log2(max(8, 16 * x * r)))) for x, r in zip(X, R)]
        grid = (tuple(X), tuple(N))
    ext, N = grid
    if f.fourier is not None:
        Fs = sample(fourier_model(f), ext, N, method="direct")
    else:
        d = f.dim
        T = np.asarray(N, float) / (4 * np.broadcast_to(np.asarray(ext, float), (d,)))
        Fs = grid_fourier(sample(f, tuple(T), N, method="direct"))
    return float(lp_norm(Fs.values, q, Fs.cell))


def lqp_norm(f: SampledGrid, J, e) -> float:
    """Mixed norm with ``L^q`` over the axes in ``J`` inside and ``L^p`` over the rest outside."""
    e = ExponentPair.coerce(e)
    axes = normalize_axes(J, f.dim)
    rest = tuple(a for a in range(f.dim) if a not in axes)
    h = f.spacing
    v = np.abs(f.values)
    if axes:
        v = lp_norm(v, e.q, float(np.prod([h[a] for a in axes])), axis=axes)
    if rest:
        v = lp_norm(v, e.p, float(np.prod([h[a] for a in rest])))
    return float(v)


def partial_fourier_modulation_norm(f: FunctionModel, J, e, window: FunctionModel = None,
                                    grid: TFGrid = None, *, spacing: float = None) -> float:
    """Norm ``||F_J^{-1} f||_{M^{p,q}}`` of the partial-Fourier modulation space."""
    g = partial_fourier(f, J, inverse=True)
    return modulation_norm_stft(g, e, window, grid, spacing=spacing)
