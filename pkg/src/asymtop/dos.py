"""Density of states: empirical sums, limit functionals and trace moments."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .errors import Inconclusive, QuadratureNotConverged
from .lame import LameRecurrence
from .params import TopParameters
from .spectrum import DegreeSpectrum, van_vleck_window

RESOLVED = "resolved"
PRINTED = "printed"
VARIANTS = (RESOLVED, PRINTED)


@dataclass(frozen=True)
class TestFunction:
    """Smooth bump ``exp(1 - 1/(1 - t^2))``, ``t = (x - c)/w``, supported in ``(c - w, c + w)``."""

    __test__ = False  # not a pytest class

    c: float
    w: float
    kind: str = "bump"

    def __post_init__(self):
        if self.kind != "bump":
            raise ValueError(f"unknown test function kind {self.kind!r}")
        if not (self.w > 0 and self.c - self.w > 0):
            raise ValueError(f"bump ({self.c}, {self.w}) must have w > 0 and support in x > 0")

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        t = (x - self.c) / self.w
        inside = np.abs(t) < 1
        ts = np.where(inside, t, 0.0)
        return np.where(inside, np.exp(1.0 - 1.0 / (1.0 - ts * ts)), 0.0)


def parse_bumps(text: str) -> list[TestFunction]:
    """``"0.8:0.1,1.2:0.1"`` -> bumps."""
    out = []
    for item in text.split(","):
        c, w = item.split(":")
        out.append(TestFunction(float(c), float(w)))
    return out


@dataclass(frozen=True)
class EmpiricalDOS:
    k: int
    samples: np.ndarray = field(repr=False)

    @property
    def weight(self) -> float:
        return 1.0 / self.samples.shape[0]

    def pair(self, f) -> float:
        return math.fsum(f(self.samples)) * self.weight

    def histogram(self, bins: int):
        lo, hi = float(self.samples[0]), float(self.samples[-1])
        if hi <= lo:
            lo, hi = lo - 0.5, hi + 0.5
        counts, edges = np.histogram(self.samples, bins=bins, range=(lo, hi))
        return counts, edges


def empirical_samples(s: DegreeSpectrum) -> EmpiricalDOS:
    if s.k < 1:
        raise ValueError("the density of states needs k >= 1")
    lam = np.sort(s.values)
    return EmpiricalDOS(s.k, np.sqrt(np.maximum(lam, 0.0)) / s.k)


def samples_from_values(k: int, values) -> EmpiricalDOS:
    lam = np.sort(np.asarray(values, dtype=np.float64))
    return EmpiricalDOS(k, np.sqrt(np.maximum(lam, 0.0)) / k)


def empirical_dos(s: DegreeSpectrum, f) -> float:
    """``(1/(2k+1)) * sum_j f(sqrt(lambda_j)/k)``."""
    return empirical_samples(s).pair(f)


def sample_window(k: int, p: TopParameters) -> tuple[float, float]:
    lo, hi = van_vleck_window(k, p)
    return math.sqrt(max(lo, 0.0)) / k, math.sqrt(hi) / k


# --- limit functionals ----------------------------------------------------

@lru_cache(maxsize=None)
def _gauss_legendre(n: int):
    return roots_legendre(n)


def _nodes(n: int, a: float, b: float):
    x, w = _gauss_legendre(n)
    h = 0.5 * (b - a)
    return h * x + 0.5 * (a + b), h * w


def resolved_g(xi, theta, p: TopParameters):
    """``(a1-a0)(beta cos(xi) sin(2 theta) + (beta^2-1) sin(theta)^2) + a1``; ranges over ``[a0, a2]``."""
    b2 = p.beta_sq
    return p.span * (math.sqrt(b2) * np.cos(xi) * np.sin(2 * theta) + (b2 - 1) * np.sin(theta) ** 2) + p.a1sq


def printed_g(xi, theta, p: TopParameters):
    """Profile exactly as stated with the quarter/three-quarter split (own beta^2, a0 offset)."""
    b2 = p.span / (p.a2sq - p.a0sq)
    st = np.sin(theta)
    return p.span * (math.sqrt(b2) * np.cos(xi) + (b2 - 1) * st) * st + p.a0sq


def _variant_integrand(f, p, variant, xi, theta):
    if variant == RESOLVED:
        g = resolved_g(xi, theta, p)
        slack = 64 * np.finfo(float).eps * p.a2sq
        if np.any(g < p.a0sq - slack) or np.any(g > p.a2sq + slack):
            raise AssertionError("resolved profile left [a0^2, a2^2] at a quadrature node")
        r = np.sqrt(np.maximum(g, 0.0))
        return f(r)
    if variant == PRINTED:
        r = np.sqrt(np.maximum(printed_g(xi, theta, p), 0.0))
        return 0.25 * f(0.5 * r) + 0.75 * f(1.5 * r)
    raise ValueError(f"unknown limit variant {variant!r}")


def _tensor_rule(f, p, variant, n, block=256):
    xi, wx = _nodes(n, 0.0, math.pi)
    th, wt = _nodes(n, 0.0, 0.5 * math.pi)
    wtc = wt * np.cos(th)
    total = 0.0
    for s in range(0, n, block):
        vals = _variant_integrand(f, p, variant, xi[s:s + block, None], th[None, :])
        total += float(wx[s:s + block] @ (vals @ wtc))
    return total / math.pi


def limit_dos(f, p: TopParameters, variant: str = RESOLVED, quad_order: int = 64,
              tol: float = 1e-10, max_order: int = 4096) -> float:
    """Pair ``f`` with the limit density of states by tensor Gauss-Legendre quadrature.

    The order doubles from ``quad_order`` until two successive rules agree
    to ``tol``; the finer value is returned.
    """
    if quad_order < 8:
        raise ValueError("quad_order must be at least 8")
    n = int(quad_order)
    prev = _tensor_rule(f, p, variant, n)
    while 2 * n <= max_order:
        n *= 2
        cur = _tensor_rule(f, p, variant, n)
        if abs(cur - prev) <= tol:
            return cur
        prev = cur
    raise QuadratureNotConverged(
        f"limit functional ({variant}) not converged to {tol:g} by order {n}"
    )


def symmetric_top_pushforward(f, a0sq: float, a1sq: float, order: int = 2048) -> float:
    """``(1/2) int_{-1}^{1} f(sqrt(a1 - (a1 - a0) t^2)) dt``: the limit when ``a1 = a2``."""
    t, w = _nodes(order, -1.0, 1.0)
    return 0.5 * float(w @ f(np.sqrt(a1sq - (a1sq - a0sq) * t * t)))


# --- trace moments --------------------------------------------------------

def trace_moment_empirical(rec: LameRecurrence, n: int, backend=None) -> float:
    """``(1/m) Tr((A/mu)**n)`` by repeated tridiagonal products on basis vectors."""
    from . import kernels

    if n < 1 or rec.m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    impl = kernels if backend is None else kernels.backends()[backend]
    diag = impl.power_trace_diagonal(rec.diag / rec.mu, rec.sup / rec.mu, rec.sub / rec.mu, int(n))
    return math.fsum(diag) / rec.m


def _beta_fn(a: float, b: float) -> float:
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def trace_moment_limit(n: int, beta_sq: float) -> float:
    """``1/2 sum_j n!/(j! j! (n-2j)!) B(j+1, n-j+1/2) (beta^2-1)^(n-2j) beta^(2j)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    terms = []
    for j in range(n // 2 + 1):
        multinom = math.factorial(n) // (math.factorial(j) ** 2 * math.factorial(n - 2 * j))
        terms.append(multinom * _beta_fn(j + 1, n - j + 0.5) * (beta_sq - 1) ** (n - 2 * j) * beta_sq ** j)
    return 0.5 * math.fsum(terms)


def h_profile(xi, theta, beta_sq: float):
    return math.sqrt(beta_sq) * np.cos(xi) * np.sin(2 * theta) + (beta_sq - 1) * np.sin(theta) ** 2


def trace_moment_quadrature(n: int, beta_sq: float, order: int = 64) -> float:
    """``(1/pi) int_0^pi int_0^{pi/2} h^n cos(theta)`` by tensor Gauss-Legendre."""
    xi, wx = _nodes(order, 0.0, math.pi)
    th, wt = _nodes(order, 0.0, 0.5 * math.pi)
    vals = h_profile(xi[:, None], th[None, :], beta_sq) ** n
    return float(wx @ vals @ (wt * np.cos(th))) / math.pi


# --- variant discrimination -----------------------------------------------

@dataclass
class DiscriminationReport:
    ks: list
    errors: dict  # variant -> list of max-over-f errors, one per k
    per_function: dict  # variant -> list (per f) of errors at the largest k
    winner: str
    rate_ok: bool
    observed_order: float | None
    threshold: float

    def to_dict(self):
        return {
            "ks": list(self.ks),
            "threshold": self.threshold,
            "errors": {v: list(e) for v, e in self.errors.items()},
            "per_function_at_kmax": {v: list(e) for v, e in self.per_function.items()},
            "winner": self.winner,
            "rate_ok": self.rate_ok,
            "observed_order": self.observed_order,
        }


def discriminate_variants(p: TopParameters, ks, fs, threshold: float = 0.05,
                          source: str = "oracle", quad_order: int = 64,
                          spectra=None) -> DiscriminationReport:
    """Decide which limit functional the computed spectra converge to.

    ``source`` picks the spectrum used for the empirical side: the dense
    oracle (default) or the recurrence.  ``spectra`` may supply precomputed
    eigenvalue arrays keyed by ``k``.
    """
    from .oracle import oracle_spectrum
    from .spectrum import degree_spectrum

    ks = [int(k) for k in ks]
    if not ks or any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("ks must be nonempty and strictly increasing")
    limits = {v: [limit_dos(f, p, v, quad_order) for f in fs] for v in VARIANTS}
    per_k = {v: [] for v in VARIANTS}
    last = {}
    for k in ks:
        if spectra is not None and k in spectra:
            vals = spectra[k]
        elif source == "oracle":
            vals = oracle_spectrum(k, p)
        else:
            vals = degree_spectrum(k, p).values
        emp = samples_from_values(k, vals)
        e = [emp.pair(f) for f in fs]
        for v in VARIANTS:
            errs = [abs(a - b) for a, b in zip(e, limits[v])]
            per_k[v].append(max(errs))
            last[v] = errs
    final = {v: per_k[v][-1] for v in VARIANTS}
    if min(final.values()) > threshold:
        raise Inconclusive(f"both variants exceed {threshold}: {final}")
    winner = min(VARIANTS, key=lambda v: final[v])
    errs = per_k[winner]
    order = None
    if len(ks) > 1 and errs[0] > 0 and errs[-1] > 0:
        order = math.log(errs[0] / errs[-1]) / math.log(ks[-1] / ks[0])
    # O(1/k): the error must not grow, and where measurable should shrink at order >= ~1/2
    rate_ok = len(ks) == 1 or (errs[-1] <= errs[0] and (order is None or order >= 0.5))
    return DiscriminationReport(ks, per_k, last, winner, rate_ok, order, threshold)
