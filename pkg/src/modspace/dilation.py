"""Exponent calculus and matrix dilations ``D_A f = f(A .)``.

For ``(p, q)`` with reciprocals ``(a, b) = (1/p, 1/q)`` the three affine
branches are ``-a``, ``b - 1`` and ``-2a + b``.  Their maximum ``mu1`` and
minimum ``mu2`` give the growth factor

    Gamma_{p,q}(lam) = max(lam^{-a}, lam^{b-1}, lam^{b-2a})
                     = lam^{mu1} (lam >= 1),  lam^{mu2} (lam <= 1),

and the norm of ``D_A`` on the modulation space behaves like the product of
``Gamma`` over the singular values of ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import FunctionModel, dilate
from .norms import ExponentPair, modulation_norms

__all__ = [
    "branches",
    "mu1",
    "mu2",
    "RegionLabel",
    "classify_region",
    "gamma",
    "DilationSpec",
    "jacobi_svd",
    "singular_values",
    "predicted_bound",
    "empirical_ratio",
    "empirical_ratios",
    "TIE_TOL",
]

#: tolerance on branch-value differences for boundary detection
TIE_TOL = 1e-12


def branches(e) -> np.ndarray:
    """The three affine exponents ``(-1/p, 1/q - 1, -2/p + 1/q)``."""
    e = ExponentPair.coerce(e)
    return np.array([-e.ip, e.iq - 1.0, -2.0 * e.ip + e.iq])


def mu1(e) -> float:
    """Largest branch: the exponent of ``Gamma`` for ``lam >= 1``."""
    return float(np.max(branches(e)))


def mu2(e) -> float:
    """Smallest branch: the exponent of ``Gamma`` for ``lam <= 1``."""
    return float(np.min(branches(e)))


@dataclass(frozen=True)
class RegionLabel:
    """Which branch realizes ``mu1`` (``A1``-``A3``) and ``mu2`` (``B1``-``B3``).

    ``A1``/``B1`` correspond to ``-1/p``, ``A2``/``B2`` to ``1/q - 1`` and
    ``A3``/``B3`` to ``-2/p + 1/q``.  The tie sets list every branch within
    :data:`TIE_TOL` of the extremum.
    """

    mu1_region: str
    mu2_region: str
    mu1_ties: tuple
    mu2_ties: tuple

    @property
    def mu1_boundary(self) -> bool:
        return len(self.mu1_ties) > 1

    @property
    def mu2_boundary(self) -> bool:
        return len(self.mu2_ties) > 1

    @property
    def boundary(self) -> bool:
        return self.mu1_boundary or self.mu2_boundary


def classify_region(e) -> RegionLabel:
    """Region labels of ``(1/p, 1/q)`` for ``mu1`` and ``mu2``."""
    b = branches(e)
    hi = np.flatnonzero(b >= b.max() - TIE_TOL)
    lo = np.flatnonzero(b <= b.min() + TIE_TOL)
    return RegionLabel(f"A{int(np.argmax(b)) + 1}", f"B{int(np.argmin(b)) + 1}",
                       tuple(f"A{i + 1}" for i in hi), tuple(f"B{i + 1}" for i in lo))


def gamma(e, lam):
    """``Gamma_{p,q}(lam) = max(lam^{-1/p}, lam^{1/q-1}, lam^{-2/p+1/q})``."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise ValueError("lam must be positive")
    b = branches(e)
    out = np.maximum(np.maximum(lam ** b[0], lam ** b[1]), lam ** b[2])
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# singular value decomposition
# ---------------------------------------------------------------------------


def jacobi_svd(A, tol: float = 1e-15, max_sweeps: int = 60):
    """One-sided (Hestenes) Jacobi SVD ``A = P diag(s) Q``.

    Column pairs of ``A V`` are rotated until mutually orthogonal, which is
    Jacobi diagonalization of ``A^T A`` carried out on ``A`` itself.  Singular
    values are returned in descending order; ties keep column order.

    Returns
    -------
    P : ndarray (d, d), orthogonal
    s : ndarray (d,), descending
    Q : ndarray (d, d), orthogonal
    """
    U = np.array(A, dtype=float)
    d = U.shape[0]
    if U.shape != (d, d):
        raise ValueError("matrix must be square")
    V = np.eye(d)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(d - 1):
            for j in range(i + 1, d):
                a = U[:, i] @ U[:, i]
                b = U[:, j] @ U[:, j]
                c = U[:, i] @ U[:, j]
                if c == 0.0:
                    continue
                off = max(off, abs(c) / np.sqrt(a * b))
                zeta = (b - a) / (2.0 * c)
                t = np.sign(zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta)) if zeta != 0 else 1.0
                cs = 1.0 / np.sqrt(1.0 + t * t)
                sn = cs * t
                Ui, Uj = U[:, i].copy(), U[:, j].copy()
                U[:, i], U[:, j] = cs * Ui - sn * Uj, sn * Ui + cs * Uj
                Vi, Vj = V[:, i].copy(), V[:, j].copy()
                V[:, i], V[:, j] = cs * Vi - sn * Vj, sn * Vi + cs * Vj
        if off < tol:
            break
    s = np.sqrt(np.sum(U * U, axis=0))
    order = np.argsort(-s, kind="stable")
    s = s[order]
    U = U[:, order]
    V = V[:, order]
    if np.any(s == 0):
        raise ValueError("matrix is singular")
    P = U / s
    return P, s, V.T


@dataclass(frozen=True, eq=False)
class DilationSpec:
    """An invertible matrix with cached SVD factors ``A = P diag(lam) Q``."""

    matrix: np.ndarray
    P: np.ndarray
    lam: np.ndarray
    Q: np.ndarray
    det: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def Lambda(self) -> np.ndarray:
        return np.diag(self.lam)

    @property
    def is_diagonal(self) -> bool:
        M = self.matrix
        return bool(np.count_nonzero(M - np.diag(np.diag(M))) == 0)

    @classmethod
    def from_factors(cls, P, lam, Q) -> "DilationSpec":
        """Build ``A = P diag(lam) Q`` keeping ``lam`` exactly as given."""
        P = np.asarray(P, float)
        Q = np.asarray(Q, float)
        lam = np.asarray(lam, float)
        if np.any(lam <= 0):
            raise ValueError("singular values must be positive")
        order = np.argsort(-lam, kind="stable")
        P, lam, Q = P[:, order], lam[order], Q[order, :]
        A = (P * lam) @ Q
        for M in (P, Q):
            if np.max(np.abs(M @ M.T - np.eye(len(lam)))) > 1e-10:
                raise ValueError("factors must be orthogonal")
        return cls(A, P, lam, Q, float(np.linalg.det(A)))

    @classmethod
    def diagonal(cls, lam) -> "DilationSpec":
        """Positive diagonal matrix (kept in the given axis order)."""
        lam = np.asarray(lam, float)
        if np.any(lam <= 0):
            raise ValueError("diagonal entries must be positive")
        order = np.argsort(-lam, kind="stable")
        d = len(lam)
        P = np.eye(d)[:, order]
        return cls(np.diag(lam), P, lam[order], P.T, float(np.prod(lam)))


def singular_values(A, threshold: float = 1e-12) -> DilationSpec:
    """SVD of a small invertible matrix by Jacobi rotations.

    Raises
    ------
    ValueError
        If ``|det A|`` is below ``threshold * max|A_ij|^d``.
    """
    if isinstance(A, DilationSpec):
        return A
    A = np.atleast_2d(np.asarray(A, dtype=float))
    d = A.shape[0]
    if A.shape != (d, d):
        raise ValueError("matrix must be square")
    if d > 8:
        raise ValueError("Jacobi SVD is intended for d <= 8")
    scale = float(np.max(np.abs(A))) ** d
    det = float(np.linalg.det(A))
    if not np.isfinite(det) or abs(det) <= threshold * scale:
        raise ValueError("matrix is (nearly) singular")
    P, s, Q = jacobi_svd(A)
    return DilationSpec(A, P, s, Q, det)


def _spec(A, dim=None) -> DilationSpec:
    if isinstance(A, DilationSpec):
        return A
    A = np.asarray(A, float)
    if A.ndim == 0:
        if dim is None:
            raise ValueError("scalar dilation needs a dimension")
        return DilationSpec.diagonal(np.full(dim, float(A)))
    if A.ndim == 1:
        return DilationSpec.diagonal(A)
    return singular_values(A)


def predicted_bound(A, e) -> float:
    """``prod_j Gamma_{p,q}(lam_j)`` over the singular values of ``A``."""
    spec = _spec(A, 1)
    return float(np.prod(np.atleast_1d(gamma(e, spec.lam))))


def empirical_ratios(A, f: FunctionModel, pairs, window: FunctionModel = None, grid=None, *,
                     spacing: float = None, reduce: bool = True, reference=None) -> list:
    """``||D_A f|| / ||f||`` in several modulation norms.

    With ``reduce=True`` (valid for the default radial Gaussian window) the
    right orthogonal factor of ``A = P Lam Q`` is dropped, since
    ``||D_A f|| = ||D_Lam D_P f||`` for radial windows; this keeps the
    lattice axis-aligned with the principal stretching directions.

    ``grid`` (if given) is used for the undilated norm only; the dilated
    norm uses the covering lattice of the dilated function.  ``reference``
    may carry precomputed norms of ``f`` (one per pair) to avoid recomputing
    them across many matrices.
    """
    spec = _spec(A, f.dim)
    pairs = [ExponentPair.coerce(e) for e in pairs]
    if reduce and window is None and not spec.is_diagonal:
        g = dilate(dilate(f, spec.P), spec.lam)
    else:
        g = dilate(f, spec.matrix)
    if reference is None:
        den = modulation_norms(f, pairs, window, grid, spacing=spacing)
    else:
        den = [float(v) for v in reference]
        if len(den) != len(pairs):
            raise ValueError("reference needs one norm per exponent pair")
    num = modulation_norms(g, pairs, window, None, spacing=spacing)
    out = []
    for n, m in zip(num, den):
        if m < 1e-12:
            raise ZeroDivisionError("norm of f is below 1e-12")
        out.append(n / m)
    return out


def empirical_ratio(A, f: FunctionModel, e, window: FunctionModel = None, grid=None, *,
                    spacing: float = None) -> float:
    """``||D_A f||_{M^{p,q}} / ||f||_{M^{p,q}}`` with a fixed window."""
    return empirical_ratios(A, f, [e], window, grid, spacing=spacing)[0]
