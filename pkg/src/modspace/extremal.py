"""Extremal test functions for dilation and Hausdorff operator bounds.

All families are built from the smooth bump

    psi(t) = exp(-a t^2 / (1 - t^2))  on |t| < 1   (a = 8, psi(0) = 1)

and its inverse Fourier transform ``G(x) = int psi(xi) e^{2 pi i x xi} d xi``,
which is computed by the trapezoid rule; because ``psi`` is flat to all
orders at ``+-1`` the rule converges faster than any power of the step.

* ``g1`` -- band-limited: transform supported in the unit ball.
* ``g2`` -- compactly supported in the unit ball.
* ``F_{lam,L}`` -- lattice sum ``sum_{|k| <= 1/lam} T_{Lk} M_k h`` with
  ``supp h^ in [-1/4, 1/4]``.
* truncated power functions ``(|.|^r chi_[1/2, 2^{M+1}]) * eta`` for the
  Hausdorff necessity argument.
"""

from __future__ import annotations

import functools

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import special

from .field import FunctionModel, SupportHint, dilate, scale, tensor
from .norms import ExponentPair, modulation_norms, modulation_norms_box
from .spectral import partial_fourier

__all__ = [
    "BUMP_A",
    "BUMP_RADIUS",
    "bump",
    "bump_transform",
    "make_g1",
    "make_g2",
    "make_h",
    "make_FlamL",
    "lattice_terms",
    "make_tensor_family",
    "tensor_base",
    "make_eta",
    "make_truncated_power",
    "make_hausdorff_necessity",
    "necessity_exponent",
    "necessity_norm",
    "necessity_slope",
    "NECESSITY_MS",
    "ExtremalFamily",
    "g1_family",
    "g2_family",
    "flaml_family",
    "necessity_family",
    "fit_slope",
    "SHRINK_LAMBDAS",
    "EXPAND_LAMBDAS",
]

BUMP_A = 8.0
#: |G(x)| < 1e-11 G(0) for |x| >= BUMP_RADIUS
BUMP_RADIUS = 18.0

SHRINK_LAMBDAS = tuple(2.0**-k for k in range(0, 7))
EXPAND_LAMBDAS = tuple(2.0**k for k in range(0, 6))

_NODES = 1024
_XI = -1 + 2 * (np.arange(_NODES) + 0.5) / _NODES


def bump(t, a: float = BUMP_A):
    """``exp(-a t^2 / (1 - t^2))`` on ``|t| < 1``, zero elsewhere."""
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1
    tt = np.where(inside, t, 0.0)
    return np.where(inside, np.exp(-a * tt**2 / (1 - tt**2)), 0.0)


_W = bump(_XI) * (2.0 / _NODES)


def bump_transform(x):
    """``G(x) = int psi(xi) e^{2 pi i x xi} d xi`` (real and even)."""
    x = np.asarray(x, dtype=float)
    flat = x.reshape(-1)
    out = np.empty(flat.shape)
    for i in range(0, flat.size, 4096):
        out[i:i + 4096] = np.cos(2 * np.pi * np.outer(flat[i:i + 4096], _XI)) @ _W
    return out.reshape(x.shape)


_G0 = float(bump_transform(0.0))


def _g1_1d(s: float = 1.0) -> FunctionModel:
    # g(x) = G(s x) / G(0); transform psi(xi/s) / (s G(0))
    s = float(s)
    hint = SupportHint((-BUMP_RADIUS / s,), (BUMP_RADIUS / s,), (-s,), (s,), False, True)
    return FunctionModel(1, lambda x: bump_transform(s * x[..., 0]) / _G0,
                         lambda xi: bump(xi[..., 0] / s) / (s * _G0), hint, name="g1")


def _g2_1d(s: float = 1.0) -> FunctionModel:
    # g(x) = psi(s x); transform G(xi/s) / s
    s = float(s)
    hint = SupportHint((-1.0 / s,), (1.0 / s,), (-BUMP_RADIUS * s,), (BUMP_RADIUS * s,), True, False)
    return FunctionModel(1, lambda x: bump(s * x[..., 0]), lambda xi: bump_transform(xi[..., 0] / s) / s,
                         hint, name="g2")


def make_g1(d: int = 1) -> FunctionModel:
    """Band-limited bump: transform supported in ``[-1/sqrt d, 1/sqrt d]^d``, inside the unit ball."""
    if d == 1:
        return _g1_1d(1.0)
    return tensor(*[_g1_1d(1.0 / np.sqrt(d)) for _ in range(d)])


def make_g2(d: int = 1) -> FunctionModel:
    """Smooth bump supported in ``[-1/sqrt d, 1/sqrt d]^d``, inside the unit ball."""
    if d == 1:
        return _g2_1d(1.0)
    return tensor(*[_g2_1d(np.sqrt(d)) for _ in range(d)])


def make_h(p: float = None) -> FunctionModel:
    """1-D ``h`` with ``h^(xi) = c psi(4 xi)``, optionally ``L^p``-normalized."""
    g = _g1_1d(0.25)
    if p is None:
        return g
    from .field import sample_axes
    R = BUMP_RADIUS * 4
    x = np.linspace(-R, R, 2 * int(R) * 16 + 1)
    v = np.abs(sample_axes(g, -R, x[1] - x[0], x.size, method="direct"))
    n = v.max() if np.isinf(p) else (np.sum(v**p) * (x[1] - x[0])) ** (1 / p)
    return scale(g, 1.0 / n)


def lattice_terms(lam: float) -> int:
    """Largest index ``K = floor(1/lam)`` of the lattice sum (per axis)."""
    return int(np.floor(1.0 / lam + 1e-9))


def _flaml_1d(lam: float, L: float, p: float = None) -> FunctionModel:
    h = make_h(p)
    K = lattice_terms(lam)
    L = float(L)
    hev, hft = h.evaluate, h.fourier
    R = BUMP_RADIUS * 4

    def evaluate(x):
        t = x[..., 0]
        c = np.round(t / L)
        out = np.zeros(t.shape, dtype=complex)
        span = int(np.ceil(R / L)) + 1
        for j in range(-span, span + 1):
            k = c + j
            ok = np.abs(k) <= K
            if not np.any(ok):
                continue
            u = np.where(ok, t - L * k, 0.0)
            out = out + np.where(ok, np.exp(2j * np.pi * k * u) * hev(u), 0.0)
        return out

    def fourier(xi):
        w = xi[..., 0]
        k = np.clip(np.round(w), -K, K)
        return np.exp(-2j * np.pi * L * k * w) * hft(w - k)

    hint = SupportHint((-L * K - R,), (L * K + R,), (-K - 0.25,), (K + 0.25,), False, True)
    return FunctionModel(1, evaluate, fourier, hint, name=f"F(lam={lam:g},L={L:g})")


def make_FlamL(lam: float, L: float = 64.0, d: int = 1, p: float = None) -> FunctionModel:
    """Lattice sum ``sum_{|k|_inf <= 1/lam} e^{2 pi i k.(x - Lk)} h(x - Lk)``.

    ``h`` is the tensor power of :func:`make_h` (``L^p``-normalized when
    ``p`` is given).  The sum has ``(2 floor(1/lam) + 1)^d`` terms.
    """
    if not 0 < lam <= 1:
        raise ValueError("lam must lie in (0, 1]")
    if L <= 0:
        raise ValueError("L must be positive")
    if d == 1:
        return _flaml_1d(lam, L, p)
    return tensor(*[_flaml_1d(lam, L, p) for _ in range(d)])


# ---------------------------------------------------------------------------
# tensor families
# ---------------------------------------------------------------------------


def _base_1d(kind: str, lam: float, L: float) -> FunctionModel:
    if kind in ("g1", "bandlimited_g1"):
        return _g1_1d()
    if kind in ("g2", "compact_g2"):
        return _g2_1d()
    if kind in ("F", "lattice_FlamL"):
        return _flaml_1d(min(lam, 1.0 / lam), L)
    raise ValueError(f"unknown kind {kind!r}")


def tensor_base(kinds: Sequence[str], lams, L: float = 64.0) -> FunctionModel:
    """Undilated tensor ``(x)_j f_j`` of per-axis extremal functions."""
    lams = np.broadcast_to(np.asarray(lams, float), (len(kinds),))
    fs = [_base_1d(k, l, L) for k, l in zip(kinds, lams)]
    return fs[0] if len(fs) == 1 else tensor(*fs)


def make_tensor_family(kinds: Sequence[str], lams, L: float = 64.0) -> FunctionModel:
    """``(x)_j D_{lam_j} f_j``: each axis carries its own extremal function and dilation."""
    lams = np.broadcast_to(np.asarray(lams, float), (len(kinds),))
    fs = [dilate(_base_1d(k, l, L), l) for k, l in zip(kinds, lams)]
    return fs[0] if len(fs) == 1 else tensor(*fs)


# ---------------------------------------------------------------------------
# truncated power family
# ---------------------------------------------------------------------------

_ETA_RADIUS = 24.0


def _gl(n):
    return np.polynomial.legendre.leggauss(n)


def make_eta() -> FunctionModel:
    """Nonnegative ``eta`` with ``eta(0) = 1`` and transform supported in ``[-1, 1]``.

    ``eta = beta^2 / beta(0)^2`` where ``beta^ = psi(2 .)``; the transform is
    the autocorrelation of ``beta^`` (support ``[-1, 1]``).
    """
    b0 = _G0 / 2
    u, w = _gl(96)

    def evaluate(x):
        return (bump_transform(x[..., 0] / 2) / _G0) ** 2

    def fourier(xi):
        z = np.asarray(xi[..., 0], float)
        lo = np.maximum(-0.5, z - 0.5)
        hi = np.minimum(0.5, z + 0.5)
        ok = hi > lo
        mid, half = 0.5 * (lo + hi), 0.5 * np.where(ok, hi - lo, 0.0)
        s = mid[..., None] + half[..., None] * u
        val = np.sum(bump(2 * s) * bump(2 * (z[..., None] - s)) * w, axis=-1) * half
        return np.where(ok, val, 0.0) / b0**2

    hint = SupportHint((-_ETA_RADIUS,), (_ETA_RADIUS,), (-1.0,), (1.0,), False, True)
    return FunctionModel(1, evaluate, fourier, hint, name="eta")


def _panels(a, b, width=4.0, n=32):
    # Gauss-Legendre panels of length <= width on [a, b]
    m = max(1, int(np.ceil((b - a) / width)))
    edges = np.linspace(a, b, m + 1)
    u, w = _gl(n)
    half = 0.5 * np.diff(edges)
    nodes = (0.5 * (edges[:-1] + edges[1:]))[:, None] + half[:, None] * u
    return nodes.ravel(), (half[:, None] * w).ravel()


def _power_transform_closed(r, a, b, xi):
    # int_a^b t^r e^{-2 pi i t xi} dt for r in {0, -1/2, -1}
    w = 2 * np.pi * np.asarray(xi, float)
    out = np.empty(w.shape, complex)
    z = np.abs(w) < 1e-300
    wn = np.where(z, 1.0, w)
    if r == 0:
        out[:] = (np.exp(-1j * wn * a) - np.exp(-1j * wn * b)) / (1j * wn)
        out[z] = b - a
    elif r == -1:
        out[:] = special.exp1(1j * wn * a) - special.exp1(1j * wn * b)
        out[z] = np.log(b / a)
    else:
        # t = u^2: 2 int e^{-i w u^2} du, Fresnel integrals
        k = np.sqrt(2 * np.abs(wn) / np.pi)
        Sa, Ca = special.fresnel(np.sqrt(a) * k)
        Sb, Cb = special.fresnel(np.sqrt(b) * k)
        val = 2 * np.sqrt(np.pi / (2 * np.abs(wn))) * ((Cb - Ca) - 1j * (Sb - Sa))
        out[:] = np.where(wn > 0, val, np.conj(val))
        out[z] = 2 * (np.sqrt(b) - np.sqrt(a))
    return out


def make_truncated_power(r: float, M: int) -> FunctionModel:
    """``(|.|^r chi_[1/2, 2^{M+1}]) * eta`` on the real line."""
    if M < 0:
        raise ValueError("M must be nonnegative")
    a, b = 0.5, 2.0 ** (M + 1)
    eta = make_eta()
    eta_ev, eta_ft = eta.evaluate, eta.fourier
    # oscillation of e^{-2 pi i t xi} for |xi| <= 1
    closed = r in (0.0, -0.5, -1.0)
    if not closed:
        tn, tw = _panels(a, b)
        tw = tw * tn**r
    u, w = _gl(24)

    def fourier(xi):
        z = np.asarray(xi[..., 0], float)
        flat = z.reshape(-1)
        out = np.zeros(flat.shape, complex)
        live = np.abs(flat) < 1
        zl = flat[live]
        if closed:
            acc = _power_transform_closed(r, a, b, zl)
        else:
            acc = np.empty(zl.shape, complex)
            for i in range(0, zl.size, 512):
                acc[i:i + 512] = np.exp(-2j * np.pi * np.outer(zl[i:i + 512], tn)) @ tw
        out[live] = acc * eta_ft(zl[:, None])
        return out.reshape(z.shape)

    def evaluate(x):
        t = np.asarray(x[..., 0], float)
        flat = t.reshape(-1)
        lo = np.maximum(a, flat - _ETA_RADIUS)
        hi = np.minimum(b, flat + _ETA_RADIUS)
        ok = hi > lo
        # empty intervals collapse onto a so the nodes stay in the power's domain
        lo, hi = np.where(ok, lo, a), np.where(ok, hi, a)
        out = np.zeros(flat.shape)
        npan = 12
        for j in range(npan):
            p0 = lo + (hi - lo) * j / npan
            p1 = lo + (hi - lo) * (j + 1) / npan
            s = 0.5 * (p0 + p1)[:, None] + 0.5 * (p1 - p0)[:, None] * u
            vals = s**r * eta_ev(flat[:, None] - s).real
            out += np.where(ok, 0.5 * (p1 - p0) * (vals @ w), 0.0)
        return out.reshape(t.shape)

    hint = SupportHint((a - _ETA_RADIUS,), (b + _ETA_RADIUS,), (-1.0,), (1.0,), False, True)
    return FunctionModel(1, evaluate, fourier, hint, name=f"tpow(r={r:g},M={M})")


def necessity_exponent(J, e, d: int) -> float:
    """Predicted growth exponent ``|J|/q + (d - |J|)/p`` in ``M + 2``."""
    e = ExponentPair.coerce(e)
    nJ = len(set(J))
    return nJ * e.iq + (d - nJ) * e.ip


#: truncation levels used for growth fits; small M are dominated by the
#: smoothing of the lower cut-off and bias the fitted slope upward
NECESSITY_MS = tuple(range(6, 15))


def _necessity_factors(J, M, e, d):
    e = ExponentPair.coerce(e)
    J = set(int(j) for j in J)
    if any(j < 1 or j > d for j in J):
        raise ValueError("axis out of range")
    return [(make_truncated_power(-(e.iq if j + 1 in J else e.ip), M), j + 1 in J) for j in range(d)]


def necessity_norm(J, M: int, e, d: int, *, spacing: float = 0.25) -> float:
    """Norm of the necessity function in the partial-Fourier modulation space.

    ``||f||_{F_J M^{p,q}} = ||F_J^{-1} f||_{M^{p,q}}``; for a tensor this is
    the product of one-dimensional norms, with ``F^{-1}`` applied on the
    axes in ``J``.
    """
    e = ExponentPair.coerce(e)
    J = set(int(j) for j in J)
    if any(j < 1 or j > d for j in J):
        raise ValueError("axis out of range")
    out = 1.0
    for j in range(d):
        inv = j + 1 in J
        out *= _factor_norm(-(e.iq if inv else e.ip), int(M), inv, e.key(), spacing)
    return out


@functools.lru_cache(maxsize=256)
def _factor_norm(r, M, inv, key, spacing):
    f = make_truncated_power(r, M)
    if inv:
        f = partial_fourier(f, [1], inverse=True)
    return modulation_norms(f, [ExponentPair(*key)], spacing=spacing)[0]


def necessity_slope(J, e, d: int, Ms=NECESSITY_MS, *, spacing: float = 0.25):
    """Fitted slope of ``log ||f_M||`` against ``log(M + 2)`` and the norms."""
    norms = np.array([necessity_norm(J, int(M), e, d, spacing=spacing) for M in Ms])
    return fit_slope(np.asarray(Ms, float) + 2, norms), norms


def make_hausdorff_necessity(J, M: int, e, d: int) -> FunctionModel:
    """Tensor of truncated powers: exponent ``-1/q`` on axes in ``J``, ``-1/p`` elsewhere.

    ``J`` uses axis labels ``1..d``.  Its norm in the partial-Fourier
    modulation space grows like ``(M + 2)^{|J|/q + (d-|J|)/p}``
    (see :func:`necessity_exponent`).
    """
    if M > 16:
        raise ValueError("M too large for the working grids")
    fs = [f for f, _ in _necessity_factors(J, M, e, d)]
    return fs[0] if d == 1 else tensor(*fs)


# ---------------------------------------------------------------------------
# families and slope fits
# ---------------------------------------------------------------------------


def fit_slope(x, y) -> float:
    """Least-squares slope of ``log y`` against ``log x``.

    Raises
    ------
    ValueError
        With fewer than four points or non-positive data.
    """
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if x.size < 4 or x.size != y.size:
        raise ValueError("slope fit needs at least four points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("slope fit needs positive data")
    lx, ly = np.log(x), np.log(y)
    lx0 = lx - lx.mean()
    return float(np.sum(lx0 * (ly - ly.mean())) / np.sum(lx0 * lx0))


@dataclass(frozen=True, eq=False)
class ExtremalFamily:
    """A parametrized family with its predicted scaling exponent.

    ``generator(lam)`` returns the test function used at parameter ``lam``
    and ``expected_exponent(e, d)`` the slope of ``log ratio`` in ``log lam``
    where the ratio is ``||D_lam f_lam|| / ||f_lam||`` (or, for the
    necessity family, ``||f_M||`` against ``M + 2``).
    """

    kind: str
    generator: Callable
    expected_exponent: Callable
    lambdas: tuple
    side: str
    params: dict = field(default_factory=dict)
    dim: int = 1

    def ratio_series(self, pairs, *, method: str = "stft", spacing: float = None) -> dict:
        """Ratios ``||D_lam f_lam|| / ||f_lam||`` for each pair, as arrays over ``lambdas``."""
        pairs = [ExponentPair.coerce(e) for e in pairs]
        if spacing is None:
            spacing = self.params.get("spacing")
        out = {e.key(): [] for e in pairs}
        for lam in self.lambdas:
            f = self.generator(lam)
            g = dilate(f, lam)
            if method == "stft":
                a = modulation_norms(g, pairs, spacing=spacing)
                b = modulation_norms(f, pairs, spacing=spacing)
            elif method == "box":
                a = modulation_norms_box(g, pairs)
                b = modulation_norms_box(f, pairs)
            else:
                raise ValueError(f"unknown method {method!r}")
            for e, x, y in zip(pairs, a, b):
                out[e.key()].append(x / y)
        return {k: np.array(v) for k, v in out.items()}


def g1_family(d: int = 1, lambdas=SHRINK_LAMBDAS) -> ExtremalFamily:
    g = make_g1(d)
    return ExtremalFamily("bandlimited_g1", lambda lam: g, lambda e, dd=d: -dd * ExponentPair.coerce(e).ip,
                          tuple(lambdas), "shrink", {}, d)


def g2_family(d: int = 1, lambdas=EXPAND_LAMBDAS) -> ExtremalFamily:
    g = make_g2(d)
    return ExtremalFamily("compact_g2", lambda lam: g,
                          lambda e, dd=d: dd * (ExponentPair.coerce(e).iq - 1), tuple(lambdas), "expand", {}, d)


def flaml_family(d: int = 1, L: float = 64.0, lambdas=tuple(2.0**-k for k in range(2, 7))) -> ExtremalFamily:
    # the lattice sums are wide in both time and frequency; a half-unit
    # lattice keeps the cost down and moves the fitted slopes by < 1e-3
    def expected(e, dd=d):
        e = ExponentPair.coerce(e)
        return dd * (-2 * e.ip + e.iq)
    return ExtremalFamily("lattice_FlamL", lambda lam: make_FlamL(lam, L, d), expected, tuple(lambdas),
                          "shrink", {"L": L, "spacing": 0.5}, d)


def necessity_family(J, e, d: int, Ms=NECESSITY_MS) -> ExtremalFamily:
    e = ExponentPair.coerce(e)
    return ExtremalFamily("hausdorff_necessity", lambda M: make_hausdorff_necessity(J, int(M), e, d),
                          lambda e2, dd=d: necessity_exponent(J, e2, dd), tuple(Ms), "growth",
                          {"J": tuple(sorted(J))}, d)
