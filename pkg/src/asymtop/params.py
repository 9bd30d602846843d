"""Top parameters, Lame species bookkeeping and eigenvalue coordinate maps."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import WeylViolation


@dataclass(frozen=True)
class TopParameters:
    """Squared axis frequencies ``0 < a0sq < a1sq < a2sq``.

    ``L = a0sq*Lx^2 + a1sq*Ly^2 + a2sq*Lz^2``.  Use :func:`validate_parameters`
    to construct; the constructor checks the ordering as well.
    """

    a0sq: float
    a1sq: float
    a2sq: float

    def __post_init__(self):
        a = (self.a0sq, self.a1sq, self.a2sq)
        if not all(math.isfinite(v) for v in a) or not (0 < a[0] < a[1] < a[2]):
            raise WeylViolation(
                f"alpha^2 = {a} is outside the Weyl chamber Lambda^3 "
                "(need 0 < a0^2 < a1^2 < a2^2 strictly)"
            )
        if not math.isfinite(self.beta_sq):
            raise WeylViolation(f"beta^2 overflows for alpha^2 = {a}")

    @property
    def alpha(self) -> tuple[float, float, float]:
        return (self.a0sq, self.a1sq, self.a2sq)

    @property
    def beta_sq(self) -> float:
        return (self.a2sq - self.a1sq) / (self.a1sq - self.a0sq)

    @property
    def total(self) -> float:
        """``|alpha| = a0sq + a1sq + a2sq``."""
        return self.a0sq + self.a1sq + self.a2sq

    @property
    def span(self) -> float:
        """Scale of the affine map from canonical to physical coordinates."""
        return self.a1sq - self.a0sq

    def scaled(self, t: float) -> "TopParameters":
        return TopParameters(t * self.a0sq, t * self.a1sq, t * self.a2sq)


def validate_parameters(a0sq, a1sq, a2sq) -> TopParameters:
    return TopParameters(float(a0sq), float(a1sq), float(a2sq))


def parse_alpha(text: str) -> TopParameters:
    """Parse ``"1,2,3"`` into validated parameters."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise WeylViolation(f"expected three comma-separated values, got {text!r}")
    try:
        vals = [float(s) for s in parts]
    except ValueError as exc:
        raise WeylViolation(f"cannot parse alpha {text!r}: {exc}") from None
    return validate_parameters(*vals)


@dataclass(frozen=True)
class RhoWeights:
    r0: float
    r1: float
    r2: float

    @property
    def total(self) -> float:
        return self.r0 + self.r1 + self.r2

    def __iter__(self):
        return iter((self.r0, self.r1, self.r2))


@dataclass(frozen=True, order=True)
class SpeciesExponents:
    """Parity exponents of the prefactor ``x**g0 * y**g1 * z**g2``."""

    g0: int
    g1: int
    g2: int

    def __post_init__(self):
        if any(g not in (0, 1) for g in (self.g0, self.g1, self.g2)):
            raise ValueError(f"exponents must be 0 or 1, got {(self.g0, self.g1, self.g2)}")

    @property
    def total(self) -> int:
        return self.g0 + self.g1 + self.g2

    @property
    def species(self) -> int:
        return self.total + 1

    @property
    def rho(self) -> RhoWeights:
        return RhoWeights(self.g0 + 0.5, self.g1 + 0.5, self.g2 + 0.5)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.g0, self.g1, self.g2)

    def __iter__(self):
        return iter(self.as_tuple())

    def __str__(self):
        return f"{self.g0}{self.g1}{self.g2}"


class SpeciesEntry(NamedTuple):
    gamma: SpeciesExponents
    m: int
    count: int


# Table order: species 1, 3 for even degree; species 2, 4 for odd degree.
_EVEN = tuple(SpeciesExponents(*g) for g in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
_ODD = tuple(SpeciesExponents(*g) for g in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


def species_for_degree(k: int) -> list[SpeciesEntry]:
    """All exponent patterns that contribute at degree ``k``.

    Each entry carries the Lame polynomial degree ``m = (k - |g|)/2`` and the
    number ``m + 1`` of eigenvalues it contributes.  The counts sum to ``2k+1``.
    """
    k = int(k)
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    out = []
    for g in _EVEN if k % 2 == 0 else _ODD:
        if g.total <= k:
            m = (k - g.total) // 2
            out.append(SpeciesEntry(g, m, m + 1))
    return out


def d_offset(p: TopParameters, g: SpeciesExponents) -> float:
    """Shift ``D`` between the physical eigenvalue and four times the accessory parameter."""
    a0, a1, a2 = p.alpha
    g0, g1, g2 = g
    return (
        (a0 + a1) * g2
        + (a0 + a2) * g1
        + (a1 + a2) * g0
        + 2 * g0 * g1 * a2
        + 2 * g1 * g2 * a0
        + 2 * g0 * g2 * a1
    )


def lame_mu(m: int, g: SpeciesExponents) -> float:
    """Leading coefficient ``m(m - 1 + |rho|)`` forced by truncation at degree ``m``."""
    return m * (m - 1 + g.rho.total)


def physical_from_canonical(nu_tilde, mu, g: SpeciesExponents, p: TopParameters):
    """Map a canonical accessory parameter to the eigenvalue of ``L``.

    ``lambda = 4*(nu_tilde*(a1sq - a0sq) + a1sq*mu) + D``.  Accepts arrays.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    return 4.0 * (nu_tilde * p.span + p.a1sq * mu) + d_offset(p, g)
