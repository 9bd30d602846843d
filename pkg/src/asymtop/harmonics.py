"""Lame harmonics as explicit polynomials, plus sphero-conal coordinates.

A degree-``k`` harmonic has the form

    x**g0 * y**g1 * z**g2 * prod_i (x**2/(t_i - a0) + y**2/(t_i - a1) + z**2/(t_i - a2))

where ``a_j`` are the squared frequencies and the ``t_i`` are the zeros of
the matching Lame polynomial, mapped from canonical to physical
coordinates by ``u = t*(a1 - a0) + a1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lame
from .errors import ComplexRootDetected, DegreeMismatch, OnAxisDegeneracy
from .params import SpeciesExponents, TopParameters, physical_from_canonical, species_for_degree
from .polynomial import Poly3, angular_square, laplacian


@dataclass(frozen=True, eq=False)
class HarmonicPolynomial:
    k: int
    gamma: SpeciesExponents
    theta_roots: tuple
    poly: Poly3

    @property
    def coeffs(self) -> dict:
        return self.poly.terms


@dataclass(frozen=True)
class SpheroConalPoint:
    u1: float
    u2: float
    on_boundary: bool = False


def _polish(coeffs_low_first, roots, steps=3):
    c = np.asarray(coeffs_low_first, dtype=np.float64)[::-1]
    dc = np.polyder(c)
    out = np.array(roots, dtype=np.float64)
    for _ in range(steps):
        f = np.polyval(c, out)
        fp = np.polyval(dc, out)
        step = np.where(fp != 0, f / np.where(fp != 0, fp, 1.0), 0.0)
        out = out - step
    return out


def theta_roots_from_eigenvector(coeffs, p: TopParameters) -> np.ndarray:
    """Physical zeros of ``sum_j a_j t**j``, sorted ascending."""
    a = np.asarray(coeffs, dtype=np.float64)
    m = a.shape[0] - 1
    if m == 0:
        return np.zeros(0)
    if a[-1] == 0:
        raise ValueError("leading coefficient vanishes")
    roots = np.roots(a[::-1])
    scale = max(1.0, float(np.max(np.abs(roots))))
    if np.any(np.abs(roots.imag) > 1e-7 * scale):
        raise ComplexRootDetected(f"non-real Lame polynomial zeros: {roots}")
    t = _polish(a, np.sort(roots.real))
    u = np.sort(t * p.span + p.a1sq)
    lo, hi = p.a0sq, p.a2sq
    if np.any(u <= lo) or np.any(u >= hi) or np.any(u == p.a1sq):
        raise ComplexRootDetected(f"zeros {u} escape ({lo}, {hi}) or hit an axis value")
    return u


def niven_residual(theta, g: SpeciesExponents, p: TopParameters) -> float:
    """Max violation of the equilibrium conditions for the zeros ``theta``.

    For each zero: ``sum_j (g_j + 1/2)/(t_i - a_j) + 2*sum_{l != i} 1/(t_i - t_l)``.
    This is the balance ``y'' + (sum_j rho_j/(x - a_j)) y' = 0`` at a zero of
    ``y = prod (x - t_l)``.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if theta.size == 0:
        return 0.0
    a = np.array(p.alpha)
    rho = np.array([gj + 0.5 for gj in g])
    fixed = (rho[None, :] / (theta[:, None] - a[None, :])).sum(axis=1)
    diff = theta[:, None] - theta[None, :]
    np.fill_diagonal(diff, np.inf)
    mutual = (1.0 / diff).sum(axis=1)
    return float(np.max(np.abs(fixed + 2.0 * mutual)))


def build_harmonic(k: int, g: SpeciesExponents, theta_roots, p: TopParameters, normalize: bool = True) -> HarmonicPolynomial:
    """Expand the product form into a homogeneous degree-``k`` polynomial.

    Each quadric factor is multiplied through by ``prod_j (t - a_j)`` so
    coefficients stay bounded; with ``normalize`` the result is scaled to
    unit max coefficient (harmonics are defined up to a constant).
    """
    theta = tuple(float(t) for t in theta_roots)
    if g.total + 2 * len(theta) != k:
        raise DegreeMismatch(f"{len(theta)} zeros with |gamma|={g.total} cannot give degree {k}")
    a0, a1, a2 = p.alpha
    poly = Poly3.monomial(g.g0, g.g1, g.g2)
    for t in theta:
        q = Poly3({
            (2, 0, 0): (t - a1) * (t - a2),
            (0, 2, 0): (t - a0) * (t - a2),
            (0, 0, 2): (t - a0) * (t - a1),
        })
        poly = poly * q
    if normalize:
        poly = poly * (1.0 / poly.max_abs_coeff())
    return HarmonicPolynomial(k, g, theta, poly)


def laplacian_residual(h: HarmonicPolynomial) -> float:
    return laplacian(h.poly).max_abs_coeff()


def apply_top(poly: Poly3, p: TopParameters) -> Poly3:
    """``(a0 Lx^2 + a1 Ly^2 + a2 Lz^2) poly``."""
    return (
        angular_square(poly, 0) * p.a0sq
        + angular_square(poly, 1) * p.a1sq
        + angular_square(poly, 2) * p.a2sq
    )


def operator_residual(h: HarmonicPolynomial, lam: float, p: TopParameters) -> float:
    return (apply_top(h.poly, p) - h.poly * lam).max_abs_coeff()


@dataclass(frozen=True, eq=False)
class LameHarmonic:
    """One eigenfunction together with its eigenvalue and the checks it passed."""

    harmonic: HarmonicPolynomial
    lam: float
    coefficients: np.ndarray  # canonical polynomial a_0..a_m

    def residuals(self, p: TopParameters) -> dict:
        h = self.harmonic
        return {
            "laplacian": laplacian_residual(h),
            "operator": operator_residual(h, self.lam, p),
            "niven": niven_residual(h.theta_roots, h.gamma, p),
        }


def degree_harmonics(k: int, p: TopParameters) -> list[LameHarmonic]:
    """All ``2k+1`` Lame harmonics of degree ``k`` in species order."""
    out = []
    for entry in species_for_degree(k):
        rec = lame.build_recurrence(k, entry.gamma, p)
        ratios = lame.canonical_eigenvalues(rec)
        for r in ratios:
            nu = r * rec.mu
            a = lame.eigenvector(rec, nu)
            theta = theta_roots_from_eigenvector(a, p)
            lam = float(physical_from_canonical(nu, rec.mu, entry.gamma, p))
            out.append(LameHarmonic(build_harmonic(k, entry.gamma, theta, p), lam, a))
    return out


# --- sphero-conal coordinates ---------------------------------------------

def spheroconal_from_cartesian(x, y, z, p: TopParameters, strict: bool = False, tol: float = 1e-12) -> SpheroConalPoint:
    """Zeros ``u1 < u2`` of ``x^2/(u-a0) + y^2/(u-a1) + z^2/(u-a2)`` on the unit sphere.

    Points on a coordinate plane put a zero on an axis value; they come
    back with ``on_boundary`` set, or raise :class:`OnAxisDegeneracy` when
    ``strict``.
    """
    r2 = x * x + y * y + z * z
    if abs(r2 - 1.0) > tol:
        raise ValueError(f"point is not on the unit sphere (|r|^2 = {r2!r})")
    a0, a1, a2 = p.alpha
    X2, Y2, Z2 = x * x / r2, y * y / r2, z * z / r2
    # numerator of R: u^2 - b u + c
    b = X2 * (a1 + a2) + Y2 * (a0 + a2) + Z2 * (a0 + a1)
    c = X2 * a1 * a2 + Y2 * a0 * a2 + Z2 * a0 * a1
    disc = max(b * b - 4.0 * c, 0.0)
    big = 0.5 * (b + np.sqrt(disc))
    small = c / big
    u1, u2 = min(small, big), max(small, big)
    boundary = not (a0 < u1 < a1 < u2 < a2)
    if boundary and strict:
        raise OnAxisDegeneracy(f"point ({x}, {y}, {z}) lies on a coordinate plane")
    return SpheroConalPoint(float(u1), float(u2), boundary)


def cartesian_from_spheroconal(sc: SpheroConalPoint, p: TopParameters):
    """Squared Cartesian coordinates ``(x^2, y^2, z^2)``."""
    a0, a1, a2 = p.alpha
    u1, u2 = sc.u1, sc.u2
    x2 = (u1 - a0) * (u2 - a0) / ((a2 - a0) * (a1 - a0))
    y2 = (u1 - a1) * (u2 - a1) / ((a2 - a1) * (a0 - a1))
    z2 = (u1 - a2) * (u2 - a2) / ((a0 - a2) * (a1 - a2))
    return (x2, y2, z2)


def _squared_point(u1, u2, p):
    return np.array(cartesian_from_spheroconal(SpheroConalPoint(u1, u2), p))


def coordinate_orthogonality(sc: SpheroConalPoint, p: TopParameters, h: float = 1e-6) -> float:
    """Normalised dot product of the two coordinate tangents, by central differences.

    The squared coordinates are affine in each ``u``, so they are differenced
    and the octant point ``sqrt(x^2)`` follows by the chain rule.
    """
    q = _squared_point(sc.u1, sc.u2, p)
    root = np.sqrt(np.maximum(q, 0.0))
    d1 = (_squared_point(sc.u1 + h, sc.u2, p) - _squared_point(sc.u1 - h, sc.u2, p)) / (2 * h)
    d2 = (_squared_point(sc.u1, sc.u2 + h, p) - _squared_point(sc.u1, sc.u2 - h, p)) / (2 * h)
    if np.any(root == 0):
        raise OnAxisDegeneracy("tangents are undefined on a coordinate plane")
    r1, r2 = d1 / (2 * root), d2 / (2 * root)
    return float(abs(r1 @ r2) / (np.linalg.norm(r1) * np.linalg.norm(r2)))
