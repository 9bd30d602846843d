"""Full degree-k spectrum of the asymmetric-top Hamiltonian from the Lame recurrence."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import lame
from .errors import SolverError
from .params import SpeciesExponents, TopParameters, physical_from_canonical, species_for_degree

DUPLICATE_RTOL = 1e-9


@dataclass(frozen=True)
class SpectralLine:
    lam: float
    k: int
    gamma: SpeciesExponents
    nu_tilde_over_mu: float
    index: int  # position within its species, ascending

    @property
    def species(self) -> int:
        return self.gamma.species


@dataclass(frozen=True, eq=False)
class DegreeSpectrum:
    k: int
    lines: tuple
    alpha: TopParameters

    @property
    def values(self) -> np.ndarray:
        return np.array([ln.lam for ln in self.lines])

    def __len__(self):
        return len(self.lines)

    def near_duplicates(self, rtol: float = DUPLICATE_RTOL):
        """Index pairs of adjacent lines (from different species) closer than ``rtol*lambda``."""
        out = []
        for i in range(len(self.lines) - 1):
            a, b = self.lines[i], self.lines[i + 1]
            if b.lam - a.lam < rtol * max(abs(b.lam), 1.0):
                out.append((i, i + 1))
        return out


def _species_lines(k, g, p, backend=None):
    try:
        rec = lame.build_recurrence(k, g, p)
        ratios = lame.canonical_eigenvalues(rec, backend=backend)
    except SolverError as exc:
        raise type(exc)(f"degree k={k}, gamma={g.as_tuple()}: {exc}") from exc
    lams = physical_from_canonical(ratios * rec.mu, rec.mu, g, p)
    return [SpectralLine(float(lam), k, g, float(r), i) for i, (lam, r) in enumerate(zip(lams, ratios))]


def _assemble(k, p, chunks) -> DegreeSpectrum:
    lines = [ln for chunk in chunks for ln in chunk]
    lines.sort(key=lambda ln: (ln.lam, ln.gamma.as_tuple(), ln.index))
    return DegreeSpectrum(k, tuple(lines), p)


def degree_spectrum(k: int, p: TopParameters, jobs: int = 1, backend=None) -> DegreeSpectrum:
    """All ``2k+1`` eigenvalues on the degree-``k`` harmonics, sorted ascending."""
    k = int(k)
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    gammas = [e.gamma for e in species_for_degree(k)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda g: _species_lines(k, g, p, backend), gammas))
    else:
        chunks = [_species_lines(k, g, p, backend) for g in gammas]
    return _assemble(k, p, chunks)


def degree_spectra(ks, p: TopParameters, jobs: int = 1) -> list[DegreeSpectrum]:
    """Spectra for several degrees; the worker pool runs over all ``(k, gamma)`` tasks."""
    ks = [int(k) for k in ks]
    tasks = [(k, e.gamma) for k in ks for e in species_for_degree(k)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda t: _species_lines(t[0], t[1], p), tasks))
    else:
        chunks = [_species_lines(k, g, p) for k, g in tasks]
    out, pos = [], 0
    for k in ks:
        n = len(species_for_degree(k))
        out.append(_assemble(k, p, chunks[pos:pos + n]))
        pos += n
    return out


def van_vleck_window(k: int, p: TopParameters) -> tuple[float, float]:
    """Open interval guaranteed to contain every degree-``k`` eigenvalue."""
    return (p.a0sq * (k - 3) * (k + 1), p.a2sq * k * (k + 4) + 4 * p.total)


def operator_sandwich(k: int, p: TopParameters) -> tuple[float, float]:
    """``a0sq*k(k+1) <= lambda <= a2sq*k(k+1)``."""
    return (p.a0sq * k * (k + 1), p.a2sq * k * (k + 1))


def expected_trace(k: int, p: TopParameters) -> float:
    return p.total * k * (k + 1) * (2 * k + 1) / 3.0


def trace_check(s: DegreeSpectrum) -> tuple[float, float]:
    """``(sum of eigenvalues, trace of L on the degree-k space)``."""
    computed = math.fsum(s.values)
    return computed, expected_trace(s.k, s.alpha)
