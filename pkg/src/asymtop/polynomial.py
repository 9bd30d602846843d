"""Sparse trivariate polynomials over binary64 with exact monomial bookkeeping."""
from __future__ import annotations

from collections import defaultdict


class Poly3:
    """Polynomial in ``x, y, z`` stored as ``{(i, j, l): coefficient}``.

    Zero coefficients are dropped.  Arithmetic is exact in the monomial
    structure; coefficients are ordinary floats.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: float(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def monomial(cls, i, j, l, coeff=1.0):
        return cls({(i, j, l): coeff})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0, 0): c})

    def __repr__(self):
        return f"Poly3({self.terms!r})"

    def __eq__(self, other):
        return isinstance(other, Poly3) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = defaultdict(float, self.terms)
        for e, c in _as_poly(other).terms.items():
            out[e] += c
        return Poly3(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly3({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Poly3({e: c * other for e, c in self.terms.items()})
        out = defaultdict(float)
        for (a, b, c), u in self.terms.items():
            for (d, e, f), v in other.terms.items():
                out[(a + d, b + e, c + f)] += u * v
        return Poly3(out)

    __rmul__ = __mul__

    def diff(self, var: int) -> "Poly3":
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return Poly3(out)

    def times_var(self, var: int) -> "Poly3":
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[var] += 1
            out[tuple(ne)] = c
        return Poly3(out)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def __call__(self, x, y, z):
        return sum(c * x ** a * y ** b * z ** l for (a, b, l), c in self.terms.items())

    def to_list(self):
        """Sorted ``[[i, j, l, coefficient], ...]`` for serialisation."""
        return [[*e, c] for e, c in sorted(self.terms.items(), reverse=True)]


def _as_poly(v):
    return v if isinstance(v, Poly3) else Poly3.constant(v)


X, Y, Z = 0, 1, 2


def laplacian(p: Poly3) -> Poly3:
    return p.diff(X).diff(X) + p.diff(Y).diff(Y) + p.diff(Z).diff(Z)


def rotation_generator(p: Poly3, axis: int) -> Poly3:
    """Real generator ``i*L_axis``: ``y d_z - z d_y`` for ``axis = 0`` and cyclic."""
    a, b = (axis + 1) % 3, (axis + 2) % 3
    return p.diff(b).times_var(a) - p.diff(a).times_var(b)


def angular_square(p: Poly3, axis: int) -> Poly3:
    """``L_axis**2 p``; the sign makes the operator nonnegative."""
    return -rotation_generator(rotation_generator(p, axis), axis)
