"""Three-term recurrence for polynomial solutions of the canonical Lame equation.

Substituting ``Y(x) = sum_j a_j x**j`` into

    x(x - b)(x + 1) Y'' + [r0 x(x - b) + r1 (x + 1)(x - b) + r2 x(x + 1)] Y'
        = (mu x - nu) Y,           b = beta**2,

gives ``C_j a_{j-1} + A_j a_j + B_j a_{j+1} = nu a_j`` with

    A_j = (b - 1) j (j - 1 + r1) - r2 j + b r0 j
    B_j = (j + 1)(j + r1) b
    C_j = mu - (j - 1)(j - 2 + |r|)

and ``mu = m(m - 1 + |r|)`` so that the recurrence closes at degree ``m``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonSymmetrizable, NotAnEigenvalue, ParityMismatch
from .params import RhoWeights, SpeciesExponents, TopParameters, lame_mu
from .tridiag import EPS, eigvalsh_tridiagonal, inverse_iteration


@dataclass(frozen=True, eq=False)
class LameRecurrence:
    m: int
    rho: RhoWeights
    beta_sq: float
    mu: float
    diag: np.ndarray  # A_0 .. A_m
    sup: np.ndarray  # B_0 .. B_{m-1}
    sub: np.ndarray  # C_1 .. C_m

    @property
    def size(self) -> int:
        return self.m + 1

    def matrix(self) -> np.ndarray:
        """Dense normalised recurrence matrix ``A / mu`` (nonsymmetric)."""
        if self.mu == 0:
            return np.zeros((1, 1))
        return (np.diag(self.diag) + np.diag(self.sup, 1) + np.diag(self.sub, -1)) / self.mu

    def c_next(self) -> float:
        """``C_{m+1}``; zero whenever ``mu`` matches the truncation degree."""
        m = self.m
        return self.mu - m * (m - 1 + self.rho.total)


def recurrence_coefficients(m: int, rho: RhoWeights, beta_sq: float, mu: float | None = None):
    r0, r1, r2 = rho
    if mu is None:
        mu = m * (m - 1 + rho.total)
    j = np.arange(m + 1, dtype=np.float64)
    diag = (beta_sq - 1.0) * j * (j - 1.0 + r1) - r2 * j + beta_sq * r0 * j
    jb = j[:-1]
    sup = (jb + 1.0) * (jb + r1) * beta_sq
    jc = j[1:]
    sub = mu - (jc - 1.0) * (jc - 2.0 + rho.total)
    return diag, sup, sub


def build_recurrence(k: int, g: SpeciesExponents, p: TopParameters) -> LameRecurrence:
    k = int(k)
    if k < g.total or (k - g.total) % 2:
        raise ParityMismatch(f"degree {k} incompatible with exponents {g.as_tuple()}")
    m = (k - g.total) // 2
    mu = lame_mu(m, g)
    diag, sup, sub = recurrence_coefficients(m, g.rho, p.beta_sq, mu)
    return LameRecurrence(m, g.rho, p.beta_sq, mu, diag, sup, sub)


def _similarity(rec: LameRecurrence):
    prod = rec.sup * rec.sub
    if np.any(~(prod > 0)):
        bad = int(np.flatnonzero(~(prod > 0))[0])
        raise NonSymmetrizable(
            f"B_{bad} * C_{bad + 1} = {prod[bad]!r} is not positive (m={rec.m})"
        )
    return prod


def symmetrize(rec: LameRecurrence):
    """Symmetric tridiagonal ``(diag, offdiag)`` similar to ``A / mu``."""
    if rec.m == 0:
        return np.zeros(1), np.zeros(0)
    prod = _similarity(rec)
    return rec.diag / rec.mu, np.sqrt(prod) / rec.mu


def canonical_eigenvalues(rec: LameRecurrence, backend=None) -> np.ndarray:
    """Sorted eigenvalues ``nu_tilde / mu`` of the recurrence (``[0]`` when ``m = 0``)."""
    if rec.m == 0:
        return np.zeros(1)
    d, e = symmetrize(rec)
    return eigvalsh_tridiagonal(d, e, backend=backend)


def eigenvector(rec: LameRecurrence, nu_tilde: float, tol: float = 1e-9) -> np.ndarray:
    """Polynomial coefficients ``a_0..a_m`` (``a_0 = 1``) for accessory value ``nu_tilde``.

    The recurrence residual is checked against ``tol * mu * max|a|``.
    """
    if rec.m == 0:
        return np.ones(1)
    d, e = symmetrize(rec)
    y = inverse_iteration(d, e, [nu_tilde / rec.mu])[:, 0]
    # undo the diagonal similarity: x_{j+1}/x_j = sqrt(C_{j+1}/B_j) * y_{j+1}/y_j
    scale = np.concatenate([[1.0], np.cumprod(np.sqrt(rec.sub / rec.sup))])
    a = scale * y
    if a[0] == 0:
        raise NotAnEigenvalue(f"eigenvector has vanishing constant term at nu_tilde={nu_tilde}")
    a = a / a[0]
    res = recurrence_residual(rec, nu_tilde, a)
    if not res <= tol * max(rec.mu, 1.0) * np.max(np.abs(a)):
        raise NotAnEigenvalue(f"recurrence residual {res:.3e} too large at nu_tilde={nu_tilde}")
    return a


def recurrence_residual(rec: LameRecurrence, nu_tilde: float, a) -> float:
    a = np.asarray(a, dtype=np.float64)
    r = (rec.diag - nu_tilde) * a
    r[:-1] += rec.sup * a[1:]
    r[1:] += rec.sub * a[:-1]
    return float(np.max(np.abs(r)))


def van_vleck_canonical_ok(values, beta_sq: float) -> bool:
    eps = 10 * EPS * (1 + beta_sq)
    values = np.asarray(values)
    return bool(np.all(values >= -1 - eps) and np.all(values <= beta_sq + eps))
