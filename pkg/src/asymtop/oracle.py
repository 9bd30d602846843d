"""Independent spectrum of the top Hamiltonian from angular-momentum matrices.

In the ``Lz`` eigenbasis ``|k, m>`` the operator
``a0sq*Lx^2 + a1sq*Ly^2 + a2sq*Lz^2`` is real symmetric with entries

    <m|L|m>     = (a0sq + a1sq)/2 * (k(k+1) - m^2) + a2sq * m^2
    <m+2|L|m>   = (a0sq - a1sq)/4 * c(m) * c(m+1),  c(m) = sqrt(k(k+1) - m(m+1))

so it splits into two tridiagonal blocks (even and odd ``m + k``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import TopParameters
from .tridiag import eigvalsh_tridiagonal


@dataclass(frozen=True, eq=False)
class DenseTopMatrix:
    k: int
    entries: np.ndarray

    @property
    def labels(self) -> np.ndarray:
        return np.arange(-self.k, self.k + 1)


def _bands(k: int, p: TopParameters):
    m = np.arange(-k, k + 1, dtype=np.float64)
    kk = float(k * (k + 1))
    diag = 0.5 * (p.a0sq + p.a1sq) * (kk - m * m) + p.a2sq * m * m
    cplus = np.sqrt(np.maximum(kk - m * (m + 1), 0.0))
    # entry (m+2, m) for m = -k .. k-2
    off2 = 0.25 * (p.a0sq - p.a1sq) * cplus[:-2] * cplus[1:-1] if k >= 1 else np.zeros(0)
    return diag, off2


def build_dense_matrix(k: int, p: TopParameters) -> DenseTopMatrix:
    k = int(k)
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    diag, off2 = _bands(k, p)
    n = 2 * k + 1
    H = np.diag(diag)
    idx = np.arange(off2.shape[0])
    H[idx + 2, idx] = off2
    H[idx, idx + 2] = off2
    return DenseTopMatrix(k, H)


def tridiagonal_blocks(k: int, p: TopParameters):
    """The two decoupled ``(diag, offdiag)`` blocks, even positions first."""
    diag, off2 = _bands(k, p)
    blocks = []
    for parity in (0, 1):
        d = diag[parity::2]
        e = off2[parity::2]
        blocks.append((d, e[: max(d.shape[0] - 1, 0)]))
    return blocks


def oracle_spectrum(k: int, p: TopParameters, backend=None) -> np.ndarray:
    """Sorted eigenvalues of the ``(2k+1)``-dimensional matrix via its tridiagonal blocks."""
    k = int(k)
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    parts = [eigvalsh_tridiagonal(d, e, backend=backend) for d, e in tridiagonal_blocks(k, p) if d.size]
    return np.sort(np.concatenate(parts))


def dense_eigvalsh(k: int, p: TopParameters) -> np.ndarray:
    """LAPACK eigenvalues of the full matrix; a second opinion on the block solve."""
    return np.linalg.eigvalsh(build_dense_matrix(k, p).entries)


def max_relative_deviation(a, b) -> float:
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.shape != b.shape:
        return float("inf")
    diff = np.abs(a - b)
    den = np.where(np.abs(b) > 0, np.abs(b), 1.0)
    return float(np.max(diff / den)) if diff.size else 0.0


def compare_spectra(k: int, p: TopParameters, tol: float = 1e-8):
    """``(max relative deviation, passed)`` between the recurrence and oracle spectra."""
    from .spectrum import degree_spectrum

    dev = max_relative_deviation(degree_spectrum(k, p).values, oracle_spectrum(k, p))
    return dev, dev <= tol
