"""Symmetric tridiagonal eigensolver: Sturm bisection plus inverse iteration."""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import ConvergenceFailure

EPS = np.finfo(np.float64).eps
SAFMIN = np.finfo(np.float64).tiny


def gershgorin(diag, off):
    diag = np.asarray(diag, dtype=np.float64)
    r = np.zeros_like(diag)
    a = np.abs(np.asarray(off, dtype=np.float64))
    r[:-1] += a
    r[1:] += a
    lo = float(np.min(diag - r))
    hi = float(np.max(diag + r))
    norm = max(abs(lo), abs(hi))
    # widen so endpoints are strictly outside the spectrum
    pad = 2.0 * EPS * norm * diag.shape[0] + 2.0 * SAFMIN
    return lo - pad, hi + pad


def eigvalsh_tridiagonal(diag, off, rtol=4 * EPS, atol=None, maxiter=256, backend=None):
    """Sorted eigenvalues of the symmetric tridiagonal matrix ``(diag, off)``.

    Each eigenvalue is bisected until its bracket is narrower than
    ``max(rtol*|lambda|, atol)``; ``atol`` defaults to ``2*eps*||T||``.
    """
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off = np.ascontiguousarray(off, dtype=np.float64)
    n = diag.shape[0]
    if off.shape[0] != max(n - 1, 0):
        raise ValueError(f"off-diagonal length {off.shape[0]} does not match size {n}")
    if n == 0:
        return np.empty(0)
    if n == 1:
        return diag.copy()
    e2 = off * off
    glo, ghi = gershgorin(diag, off)
    norm = max(abs(glo), abs(ghi))
    if atol is None:
        atol = 2.0 * EPS * norm
    pivmin = SAFMIN * max(1.0, float(e2.max()))
    impl = kernels if backend is None else kernels.backends()[backend]
    vals, ok = impl.bisect_all(diag, e2, pivmin, glo, ghi, float(rtol), float(atol), int(maxiter))
    if not ok or not np.all(np.isfinite(vals)):
        raise ConvergenceFailure(f"bisection did not converge within {maxiter} steps (n={n})")
    return vals


def count_below(diag, off, x):
    off = np.asarray(off, dtype=np.float64)
    e2 = off * off
    pivmin = SAFMIN * max(1.0, float(e2.max()) if e2.size else 1.0)
    return kernels.sturm_count(diag, e2, pivmin, float(x))


def inverse_iteration(diag, off, eigvals, iters=3):
    """Unit eigenvectors (as columns) for the given eigenvalues.

    Vectors whose eigenvalues lie within ``1e-10*||T||`` of an earlier one
    are reorthogonalised against it once per sweep.
    """
    diag = np.asarray(diag, dtype=np.float64)
    off = np.asarray(off, dtype=np.float64)
    n = diag.shape[0]
    eigvals = np.atleast_1d(np.asarray(eigvals, dtype=np.float64))
    vecs = np.empty((n, eigvals.shape[0]))
    if n == 1:
        vecs[:] = 1.0
        return vecs
    T = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    glo, ghi = gershgorin(diag, off)
    norm = max(abs(glo), abs(ghi), SAFMIN)
    start = 1.0 + 0.1 * np.cos(np.arange(n))
    for col, lam in enumerate(eigvals):
        shift = lam + 8 * EPS * norm
        M = T - shift * np.eye(n)
        v = start / np.linalg.norm(start)
        close = [c for c in range(col) if abs(eigvals[c] - lam) <= 1e-10 * norm]
        for _ in range(iters):
            try:
                v = np.linalg.solve(M, v)
            except np.linalg.LinAlgError:
                M = T - (shift + 64 * EPS * norm) * np.eye(n)
                v = np.linalg.solve(M, v)
            for c in close:
                v = v - (vecs[:, c] @ v) * vecs[:, c]
            v = v / np.linalg.norm(v)
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        vecs[:, col] = v
    return vecs
