"""Short-time Fourier transform on rectangular time-frequency lattices.

``V_g f(x, xi) = int f(t) conj(g(t - x)) exp(-2 pi i t.xi) dt``.

The transform is computed one axis at a time with a tensor-product window.
Along an axis, ``f`` is sampled once on a fine grid of step ``Delta = h_x/r``
that contains every lattice node ``x``; for each node the windowed slice is
transformed by an FFT whose bins fall exactly on the frequency lattice.  The
step is chosen from the support hints so that the Riemann sums are free of
aliasing (they are then exact up to the effective-support truncation).

Results can be materialized (:func:`stft`) or streamed block by block
(:func:`stft_blocks`), which is what the norm evaluators use on large
lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
import scipy.fft
from numpy.lib.stride_tricks import sliding_window_view

from .field import (FunctionModel, as_points, dilate, is_power_of_two, sample_axes)
from .spectral import normalize_axes, partial_fourier

__all__ = [
    "TFGrid",
    "TFCoefficients",
    "ErrorReport",
    "stft",
    "stft_blocks",
    "stft_points",
    "check_fundamental_identity",
    "check_partial_fundamental_identity",
    "stft_dilation_identity_check",
    "MAX_TF_VALUES",
]

#: cap on the number of materialized STFT values
MAX_TF_VALUES = 2**26

# working-set budget (complex entries) for one block
_BLOCK = 1 << 22


def _tup(v, d, cast=float):
    return tuple(cast(a) for a in np.broadcast_to(np.asarray(v), (d,)))


@dataclass(frozen=True)
class TFGrid:
    """Lattice ``x = c_x - T_x + k h_x``, ``xi = c_xi - T_xi + l h_xi`` per axis.

    ``h_x = 2 T_x / N_x`` and ``h_xi = 2 T_xi / N_xi``; counts are powers of
    two.  Centers default to the origin.
    """

    dim: int
    x_extent: tuple
    xi_extent: tuple
    nx: tuple
    nxi: tuple
    x_center: tuple = None
    xi_center: tuple = None

    def __post_init__(self):
        d = int(self.dim)
        object.__setattr__(self, "dim", d)
        for name, cast in (("x_extent", float), ("xi_extent", float), ("nx", int), ("nxi", int)):
            object.__setattr__(self, name, _tup(getattr(self, name), d, cast))
        for name in ("x_center", "xi_center"):
            v = getattr(self, name)
            object.__setattr__(self, name, _tup(0.0 if v is None else v, d))
        if min(self.x_extent + self.xi_extent) <= 0:
            raise ValueError("extents must be positive")
        if not all(is_power_of_two(n) for n in self.nx + self.nxi):
            raise ValueError("lattice counts must be powers of two")

    @classmethod
    def centered(cls, dim=1, extent=16.0, spacing=0.125):
        """Same centered lattice in time and frequency (default: 1/8 over [-16, 16])."""
        n = int(round(2 * extent / spacing))
        return cls(dim, extent, extent, n, n)

    @classmethod
    def default(cls, dim=1):
        if dim == 1:
            return cls.centered(1, 16.0, 0.125)
        return cls.centered(dim, 8.0, 0.25)

    @classmethod
    def covering(cls, f: FunctionModel, window: FunctionModel, spacing: float = 0.5):
        """Smallest lattice with the given spacing covering the essential STFT support."""
        h = float(spacing)
        tlo, thi = f.support_hint.time_box()
        flo, fhi = f.support_hint.freq_box()
        wlo, whi = window.support_hint.time_box()
        vlo, vhi = window.support_hint.freq_box()
        if not (np.all(np.isfinite([tlo, thi, flo, fhi])) and np.all(np.isfinite([wlo, whi, vlo, vhi]))):
            raise ValueError("covering lattice needs bounded support hints")
        xs = [_cover(a - wh, b - wl, h) for a, b, wl, wh in zip(tlo, thi, wlo, whi)]
        ks = [_cover(a + vl, b + vh, h) for a, b, vl, vh in zip(flo, fhi, vlo, vhi)]
        return cls(f.dim, [x[0] for x in xs], [k[0] for k in ks], [x[1] for x in xs],
                   [k[1] for k in ks], [x[2] for x in xs], [k[2] for k in ks])

    @property
    def x_step(self):
        return tuple(2 * T / n for T, n in zip(self.x_extent, self.nx))

    @property
    def xi_step(self):
        return tuple(2 * T / n for T, n in zip(self.xi_extent, self.nxi))

    @property
    def x_start(self):
        return tuple(c - T for c, T in zip(self.x_center, self.x_extent))

    @property
    def xi_start(self):
        return tuple(c - T for c, T in zip(self.xi_center, self.xi_extent))

    def x_axes(self):
        return [s + h * np.arange(n) for s, h, n in zip(self.x_start, self.x_step, self.nx)]

    def xi_axes(self):
        return [s + h * np.arange(n) for s, h, n in zip(self.xi_start, self.xi_step, self.nxi)]

    @property
    def cell_x(self) -> float:
        return float(np.prod(self.x_step))

    @property
    def cell_xi(self) -> float:
        return float(np.prod(self.xi_step))

    @property
    def shape(self):
        return self.nx + self.nxi

    @property
    def size(self) -> int:
        return int(np.prod(np.asarray(self.shape, float)))


def _cover(lo, hi, h):
    # centered power-of-two lattice of step h containing [lo, hi]
    a = np.floor(lo / h) * h
    b = np.ceil(hi / h) * h
    c = np.round(0.5 * (a + b) / h) * h
    n = 8
    while c - n * h / 2 > a + 1e-12 or c + n * h / 2 - h < b - 1e-12:
        n *= 2
    return n * h / 2, n, c


@dataclass(frozen=True, eq=False)
class TFCoefficients:
    """STFT samples with shape ``grid.nx + grid.nxi`` (time axes first)."""

    grid: TFGrid
    values: np.ndarray
    window_tag: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != self.grid.shape:
            raise ValueError(f"values shape {v.shape} does not match lattice {self.grid.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite STFT values")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class ErrorReport:
    """Sup-difference of two sides of an identity over a lattice."""

    max_error: float
    scale: float
    n_points: int

    @property
    def relative(self) -> float:
        return self.max_error / self.scale if self.scale > 0 else self.max_error


# ---------------------------------------------------------------------------
# axis plans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _AxisPlan:
    x0: float
    hx: float
    nx: int
    xi: np.ndarray
    r: int
    step: float
    n_left: int
    n_win: int
    n_fft: int
    bins: Optional[np.ndarray]
    window: np.ndarray

    @property
    def n_total(self):
        return (self.nx - 1) * self.r + self.n_win

    @property
    def t0(self):
        return self.x0 - self.n_left * self.step


def _factor(window: FunctionModel, a: int) -> FunctionModel:
    if window.dim == 1:
        return window
    if window.factors is None:
        raise ValueError("the window must be an elementary tensor")
    return window.factors[a]


def _band(f: FunctionModel, a: int) -> float:
    lo, hi = f.support_hint.freq_lo[a], f.support_hint.freq_hi[a]
    b = max(abs(lo), abs(hi))
    if not np.isfinite(b):
        raise ValueError("frequency support of the function is unknown; cannot choose a sampling step")
    return b


def _plan(f, window, grid, a, band=None):
    g = _factor(window, a)
    wl, wh = g.support_hint.time_lo[0], g.support_hint.time_hi[0]
    w = max(abs(wl), abs(wh))
    if not np.isfinite(w):
        raise ValueError("window time support unknown")
    Fg = _band(g, 0)
    Ff = _band(f, a) if band is None else float(band)
    hx = grid.x_step[a]
    xi = grid.xi_axes()[a]
    ximax = float(np.max(np.abs(xi)))
    need = max(ximax + Ff + Fg, 2 * Ff, 2 * Fg)
    r = int(np.floor(need * hx)) + 1
    step = hx / r
    n_left = int(np.ceil(w / step))
    n_win = 2 * n_left + 1
    m = 1.0 / (hx * grid.xi_step[a])
    bins = None
    n_fft = n_win
    if abs(m - round(m)) < 1e-9 and round(m) >= 1:
        # FFT length r*m puts the bins exactly on the frequency lattice
        n_fft = r * int(round(m))
        b = xi * n_fft * step
        if np.all(np.abs(b - np.round(b)) < 1e-6):
            bins = np.mod(np.round(b).astype(np.int64), n_fft)
    u = (np.arange(n_win) - n_left) * step
    gw = np.conj(g.evaluate(u))
    return _AxisPlan(grid.x_start[a], hx, grid.nx[a], xi, r, step, n_left, n_win,
                     n_fft if bins is not None else n_win, bins, gw)


def _axis_stft(S, plan: _AxisPlan, i0: int, i1: int, phase: bool = True) -> np.ndarray:
    """Transform the last axis of ``S`` for lattice nodes ``i0:i1``.

    Returns shape ``S.shape[:-1] + (i1 - i0, n_xi)``.
    """
    seg = S[..., i0 * plan.r:(i1 - 1) * plan.r + plan.n_win]
    win = sliding_window_view(seg, plan.n_win, axis=-1)[..., ::plan.r, :]
    prod = win * plan.window
    if plan.bins is not None:
        # fold onto one period of the short FFT (sum of length-n_fft segments)
        M = plan.n_fft
        c = -(-plan.n_win // M)
        if c > 1:
            pad = c * M - plan.n_win
            if pad:
                prod = np.concatenate([prod, np.zeros(prod.shape[:-1] + (pad,), prod.dtype)], axis=-1)
            prod = prod.reshape(prod.shape[:-1] + (c, M)).sum(axis=-2)
        F = scipy.fft.fft(prod, n=M, axis=-1)[..., plan.bins]
    else:
        E = np.exp(-2j * np.pi * np.outer(np.arange(plan.n_win) * plan.step, plan.xi))
        F = prod @ E
    if not phase:
        return plan.step * F
    x = plan.x0 + plan.hx * np.arange(i0, i1)
    ph = np.exp(-2j * np.pi * np.outer(x - plan.n_left * plan.step, plan.xi))
    return plan.step * F * ph


def stft_blocks(f: FunctionModel, window: FunctionModel, grid: TFGrid, *,
                band=None, budget: int = _BLOCK, phase: bool = True) -> Iterator[tuple]:
    """Yield ``(slices, block)`` pieces of ``V_window f`` on ``grid``.

    ``block`` has axes ``(x_1, xi_1, ..., x_d, xi_d)``; ``slices`` gives the
    corresponding lattice index ranges in the same order.  Blocks tile the
    lattice in a fixed order.  With ``phase=False`` the blocks are only
    correct in modulus (each node's phase factor is dropped), which is all
    the norm evaluators need.
    """
    d = f.dim
    if window.dim != d or grid.dim != d:
        raise ValueError("dimension mismatch between function, window and lattice")
    bands = [None] * d if band is None else list(np.broadcast_to(np.asarray(band, float), (d,)))
    plans = [_plan(f, window, grid, a, bands[a]) for a in range(d)]
    S = sample_axes(f, [p.t0 for p in plans], [p.step for p in plans], [p.n_total for p in plans])
    yield from _recurse(S, plans, 0, (), budget, phase)


def _recurse(S, plans, a, prefix, budget, phase):
    d = len(plans)
    p = plans[a]
    pos = 2 * a
    # move the sample axis of level a to the end
    Sm = np.moveaxis(S, pos, -1)
    rest = int(np.prod(Sm.shape[:-1])) if Sm.ndim > 1 else 1
    bx = max(1, min(p.nx, budget // max(1, rest * max(p.n_win, len(p.xi)))))
    for i0 in range(0, p.nx, bx):
        i1 = min(p.nx, i0 + bx)
        W = _axis_stft(Sm, p, i0, i1, phase)  # (..., bx, nxi)
        W = np.moveaxis(W, (-2, -1), (pos, pos + 1))
        sl = prefix + (slice(i0, i1), slice(0, len(p.xi)))
        if a + 1 == d:
            yield sl, W
        else:
            yield from _recurse(W, plans, a + 1, sl, budget, phase)


def stft(f: FunctionModel, window: FunctionModel, grid: TFGrid, *, band=None) -> TFCoefficients:
    """Materialize ``V_window f`` on the lattice.

    Parameters
    ----------
    f, window : FunctionModel
        The window must be an elementary tensor (or one-dimensional).  Both
        need bounded frequency hints (``band`` may override the one of ``f``).
    grid : TFGrid

    Returns
    -------
    TFCoefficients
    """
    if grid.size > MAX_TF_VALUES:
        raise MemoryError("lattice too large to materialize; use stft_blocks")
    d = f.dim
    inter = tuple(n for pair in zip(grid.nx, grid.nxi) for n in pair)
    out = np.empty(inter, dtype=complex)
    for sl, blk in stft_blocks(f, window, grid, band=band):
        out[sl] = blk
    order = tuple(range(0, 2 * d, 2)) + tuple(range(1, 2 * d, 2))
    return TFCoefficients(grid, np.transpose(out, order), window.name)


# ---------------------------------------------------------------------------
# direct quadrature oracle
# ---------------------------------------------------------------------------


def stft_points(f: FunctionModel, window: FunctionModel, x, xi, *, step: float = None,
                radius: float = None) -> np.ndarray:
    """``V_window f`` at scattered points by direct trapezoid quadrature.

    Independent of the lattice pipeline: ``f`` and the window are evaluated
    pointwise at ``t = x + u`` for a fixed local grid ``u`` covering the
    window.  Intended for small point sets (oracle use).
    """
    d = f.dim
    x = as_points(x, d).reshape(-1, d)
    xi = as_points(xi, d).reshape(-1, d)
    if x.shape != xi.shape:
        raise ValueError("x and xi must pair up")
    if radius is None:
        radius = max(max(abs(a), abs(b)) for a, b in zip(window.support_hint.time_lo, window.support_hint.time_hi))
    if step is None:
        fb = max(_band(f, a) for a in range(d)) if np.isfinite(f.support_hint.freq_radius) else 8.0
        wb = max(_band(_factor(window, a) if window.dim > 1 else window, 0) for a in range(d))
        step = 1.0 / (2.0 * (float(np.max(np.abs(xi))) + fb + wb) + 4.0)
    n = int(np.ceil(radius / step))
    u1 = np.arange(-n, n + 1) * step
    U = np.stack(np.meshgrid(*([u1] * d), indexing="ij"), -1).reshape(-1, d)
    gw = np.conj(window.evaluate(U))
    out = np.empty(x.shape[0], dtype=complex)
    for i in range(x.shape[0]):
        t = x[i] + U
        out[i] = np.sum(f.evaluate(t) * gw * np.exp(-2j * np.pi * (t @ xi[i]))) * step**d
    return out


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def _swap_grid(grid: TFGrid, axes):
    """Lattice for the right-hand side of the (partial) fundamental identity."""
    xe, ke, nx, nk, xc, kc = (list(v) for v in (grid.x_extent, grid.xi_extent, grid.nx, grid.nxi,
                                                grid.x_center, grid.xi_center))
    for a in axes:
        hx = grid.x_step[a]
        # new time nodes: old frequency nodes; new frequency nodes: negated old time nodes
        xe[a], ke[a] = grid.xi_extent[a], grid.x_extent[a]
        nx[a], nk[a] = grid.nxi[a], grid.nx[a]
        xc[a], kc[a] = grid.xi_center[a], -grid.x_center[a] + hx
    return TFGrid(grid.dim, xe, ke, nx, nk, xc, kc)


def _swap_values(V2, grid, axes):
    # V2 indexed (x'..., xi'...) -> original (x..., xi...) ordering
    d = grid.dim
    V = V2
    for a in axes:
        V = np.swapaxes(V, a, d + a)
        V = np.flip(V, axis=a)
    return V


def check_partial_fundamental_identity(f: FunctionModel, g: FunctionModel, J, grid: TFGrid, *,
                                      perturb: complex = 1.0) -> ErrorReport:
    """Compare ``V_g f(x, w)`` with its partial-Fourier rewriting on the lattice.

    The right-hand side ``exp(-2 pi i x_J.w_J) V_{F_J g} F_J f(w_J + x_Jc, -x_J + w_Jc)``
    is computed by an independent STFT of the transformed pair on the
    swapped lattice.  ``perturb`` multiplies the left-hand side (fault
    injection for negative controls).
    """
    axes = normalize_axes(J, f.dim)
    lhs = perturb * stft(f, g, grid).values
    if not axes:
        rhs = stft(f, g, grid).values
        return ErrorReport(float(np.max(np.abs(lhs - rhs))), float(np.max(np.abs(lhs))), lhs.size)
    Jl = [a + 1 for a in axes]
    fJ = partial_fourier(f, Jl)
    gJ = partial_fourier(g, Jl)
    g2 = _swap_grid(grid, axes)
    rhs = _swap_values(stft(fJ, gJ, g2).values, grid, axes)
    d = f.dim
    xs, ks = grid.x_axes(), grid.xi_axes()
    phase = np.zeros(grid.shape)
    for a in axes:
        shape = [1] * (2 * d)
        shape[a] = -1
        xa = xs[a].reshape(shape)
        shape = [1] * (2 * d)
        shape[d + a] = -1
        phase = phase + xa * ks[a].reshape(shape)
    rhs = np.exp(-2j * np.pi * phase) * rhs
    return ErrorReport(float(np.max(np.abs(lhs - rhs))), float(np.max(np.abs(lhs))), lhs.size)


def check_fundamental_identity(f: FunctionModel, g: FunctionModel, grid: TFGrid, *,
                               perturb: complex = 1.0) -> ErrorReport:
    """``V_g f(x, xi) = exp(-2 pi i x.xi) V_{g^} f^(xi, -x)`` on the lattice."""
    return check_partial_fundamental_identity(f, g, range(1, f.dim + 1), grid, perturb=perturb)


def stft_dilation_identity_check(f: FunctionModel, phi: FunctionModel, Lam, grid: TFGrid) -> ErrorReport:
    """``V_{D phi}(D f)(x, xi) = |det L|^{-1} V_phi f(L x, L^{-1} xi)`` for diagonal ``L > 0``."""
    lam = getattr(Lam, "matrix", Lam)
    lam = np.asarray(lam, float)
    if lam.ndim == 2:
        if np.count_nonzero(lam - np.diag(np.diag(lam))):
            raise ValueError("dilation must be diagonal")
        lam = np.diag(lam)
    lam = np.broadcast_to(np.atleast_1d(lam), (f.dim,)).astype(float)
    if np.any(lam <= 0):
        raise ValueError("diagonal entries must be positive")
    lhs = stft(dilate(f, np.diag(lam)), dilate(phi, np.diag(lam)), grid).values
    g2 = TFGrid(grid.dim, np.array(grid.x_extent) * lam, np.array(grid.xi_extent) / lam, grid.nx, grid.nxi,
                np.array(grid.x_center) * lam, np.array(grid.xi_center) / lam)
    rhs = stft(f, phi, g2).values / float(np.prod(lam))
    return ErrorReport(float(np.max(np.abs(lhs - rhs))), float(np.max(np.abs(lhs))), lhs.size)
