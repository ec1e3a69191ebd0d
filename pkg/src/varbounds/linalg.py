"""Small dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The Hermitian
eigensolver is a cyclic Jacobi iteration, which is accurate to working
precision for the small matrices (dimension up to ~16) handled here.
Singular values are delegated to LAPACK through :func:`numpy.linalg.svd`,
so that the Jacobi route and the SVD route can be checked against each
other.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import NegativeEigenvalue, NonFinite, NotConverged, NotHermitian, NotSquare, ShapeMismatch

HERMITIAN_RTOL = 1e-10
CLAMP_WINDOW = 1e-10
JACOBI_RTOL = 1e-14
JACOBI_MAX_SWEEPS = 100
_SIGN_CUTOFF = 1e-12


class HermEigen(NamedTuple):
    """Eigen-decomposition ``H = V diag(w) V^H`` with ``w`` ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_cmatrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a finite 2-D complex128 array (a copy)."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.ndim != 2 or m.size == 0:
        raise ShapeMismatch(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite(f"{name} contains NaN or Inf")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def hermitian_defect(h: np.ndarray) -> float:
    """Frobenius norm of ``H - H^H``."""
    return float(np.linalg.norm(h - dagger(h)))


def is_hermitian(h, rtol: float = HERMITIAN_RTOL) -> bool:
    m = np.asarray(h)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return hermitian_defect(m) <= rtol * max(1.0, float(np.linalg.norm(m)))


def check_hermitian(h, name: str = "matrix", rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Validate ``h`` and return its symmetrised copy ``(H + H^H)/2``."""
    m = as_cmatrix(h, name)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"{name} must be square, got shape {m.shape}")
    defect = hermitian_defect(m)
    if defect > rtol * max(1.0, float(np.linalg.norm(m))):
        raise NotHermitian(f"{name} is not Hermitian (||H - H^H||_F = {defect:.3e})")
    return 0.5 * (m + dagger(m))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # a is Hermitian and owned by us; it is overwritten.
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return a.diagonal().real.copy(), v
    target = JACOBI_RTOL * scale
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        if math.sqrt(float(np.sum(np.abs(a[offdiag]) ** 2))) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # Phase-rotate column q so the (p, q) entry becomes real, then
                # apply the classical real rotation.  J = [[c, s], [-s e, c e]].
                e = apq.conjugate() / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - (s * e) * col_q
                a[:, q] = s * col_p + (c * e) * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                ec = e.conjugate()
                a[p, :] = c * row_p - (s * ec) * row_q
                a[q, :] = s * row_p + (c * ec) * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - (s * e) * vq
                v[:, q] = s * vp + (c * e) * vq
    else:
        if math.sqrt(float(np.sum(np.abs(a[offdiag]) ** 2))) > target:
            raise NotConverged(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    return a.diagonal().real.copy(), v


def eigh(h, rtol: float = HERMITIAN_RTOL) -> HermEigen:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    The first component of each eigenvector whose modulus exceeds 1e-12 is
    made real and positive, so results are reproducible.

    Raises
    ------
    NotSquare, NotHermitian, NonFinite
    """
    a = check_hermitian(h, "H", rtol)
    w, v = _jacobi(a)
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(v.shape[1]):
        col = v[:, k]
        idx = np.flatnonzero(np.abs(col) > _SIGN_CUTOFF)
        if idx.size:
            z = col[idx[0]]
            v[:, k] = col * (abs(z) / z)
            v[idx[0], k] = abs(z)
    return HermEigen(w, v)


def eigvalsh(h) -> np.ndarray:
    return eigh(h).eigenvalues


def lambda_max(h) -> float:
    return float(eigh(h).eigenvalues[-1])


def psd_sqrt(h) -> np.ndarray:
    """Hermitian positive square root of a PSD matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as rounding noise and clamped
    to zero; anything more negative raises :class:`NegativeEigenvalue`.
    """
    w, v = eigh(h)
    return sqrt_from_eigen(w, v)


def sqrt_from_eigen(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    if w[0] < -CLAMP_WINDOW:
        raise NegativeEigenvalue(f"matrix has eigenvalue {w[0]:.3e} < -{CLAMP_WINDOW:g}")
    root = np.sqrt(np.clip(w, 0.0, None))
    s = (v * root) @ dagger(v)
    return 0.5 * (s + dagger(s))


def singular_values(a) -> np.ndarray:
    """Singular values in descending order (``min(n, m)`` of them)."""
    m = as_cmatrix(a, "A")
    return np.linalg.svd(m, compute_uv=False)


def sigma_max(a) -> float:
    return float(singular_values(a)[0])


def frobenius_inner(a, b) -> complex:
    """``Tr(A^H B)``."""
    x = np.asarray(a, dtype=np.complex128)
    y = np.asarray(b, dtype=np.complex128)
    if x.shape != y.shape:
        raise ShapeMismatch(f"shapes differ: {x.shape} vs {y.shape}")
    return complex(np.vdot(x, y))
