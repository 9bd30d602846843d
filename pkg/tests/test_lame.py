import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from asymtop.errors import NonSymmetrizable, ParityMismatch
from asymtop.lame import (
    LameRecurrence,
    build_recurrence,
    canonical_eigenvalues,
    eigenvector,
    recurrence_residual,
    symmetrize,
    van_vleck_canonical_ok,
)
from asymtop.params import SpeciesExponents, species_for_degree, validate_parameters

SQ3 = np.sqrt(3.0)
ALL_GAMMAS = [SpeciesExponents(*g) for g in
              [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]]


def sympy_recurrence_matrix(m, rho, b2):
    """Oracle: substitute sum a_j x^j into the canonical ODE and read off the linear map."""
    x, nu = sp.symbols("x nu")
    a = sp.symbols(f"a0:{m + 1}")
    r0, r1, r2 = [sp.Rational(r).limit_denominator() for r in rho]
    b = sp.nsimplify(b2)
    Y = sum(a[j] * x ** j for j in range(m + 1))
    mu = m * (m - 1 + r0 + r1 + r2)
    lhs = (x * (x - b) * (x + 1) * sp.diff(Y, x, 2)
           + (r0 * x * (x - b) + r1 * (x + 1) * (x - b) + r2 * x * (x + 1)) * sp.diff(Y, x)
           - mu * x * Y)
    poly = sp.Poly(sp.expand(-lhs), x)
    # -lhs = -nu*Y at each power j <= m; row j of the matrix maps (a) -> coefficient of x^j
    M = np.zeros((m + 1, m + 1))
    for j in range(m + 1):
        cj = poly.coeff_monomial(x ** j)
        for i in range(m + 1):
            M[j, i] = float(sp.diff(cj, a[i]))
    top = poly.coeff_monomial(x ** (m + 1)) if poly.degree() >= m + 1 else 0
    return M, float(mu), top


def dense(rec):
    return np.diag(rec.diag) + np.diag(rec.sup, 1) + np.diag(rec.sub, -1)


def test_k2_example(p123):
    rec = build_recurrence(2, SpeciesExponents(0, 0, 0), p123)
    assert rec.m == 1 and rec.mu == 1.5
    np.testing.assert_array_equal(rec.diag, [0.0, 0.0])
    np.testing.assert_array_equal(rec.sup, [0.5])
    np.testing.assert_array_equal(rec.sub, [1.5])


def test_m0(p123):
    rec = build_recurrence(1, SpeciesExponents(1, 0, 0), p123)
    assert rec.m == 0 and rec.mu == 0
    np.testing.assert_array_equal(rec.diag, [0.0])
    np.testing.assert_array_equal(canonical_eigenvalues(rec), [0.0])
    np.testing.assert_array_equal(eigenvector(rec, 0.0), [1.0])
    d, e = symmetrize(rec)
    assert list(d) == [0.0] and e.size == 0


def test_c1_equals_mu(p123):
    for k in range(2, 30):
        for ent in species_for_degree(k):
            rec = build_recurrence(k, ent.gamma, p123)
            if rec.m:
                assert rec.sub[0] == rec.mu


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("g", ALL_GAMMAS)
@pytest.mark.parametrize("b2", [1.0, 0.25, 3.0])
def test_coefficients_match_symbolic_substitution(m, g, b2):
    a0 = 1.0
    p = validate_parameters(a0, 2.0, 2.0 + b2)
    rec = build_recurrence(2 * m + g.total, g, p)
    M, mu, top = sympy_recurrence_matrix(m, tuple(g.rho), b2)
    assert rec.mu == pytest.approx(mu)
    assert top == 0  # truncation: x^(m+1) coefficient vanishes identically
    np.testing.assert_allclose(dense(rec), M, rtol=1e-13, atol=1e-13)


def test_truncation_consistency(p123):
    for k in range(0, 40):
        for ent in species_for_degree(k):
            assert build_recurrence(k, ent.gamma, p123).c_next() == 0


def test_parity_mismatch(p123):
    with pytest.raises(ParityMismatch):
        build_recurrence(3, SpeciesExponents(0, 0, 0), p123)
    with pytest.raises(ParityMismatch):
        build_recurrence(1, SpeciesExponents(1, 1, 1), p123)


def test_signs_and_symmetrizability(p123):
    for k in range(2, 60):
        for ent in species_for_degree(k):
            rec = build_recurrence(k, ent.gamma, p123)
            assert rec.diag[0] == 0
            assert np.all(rec.sup > 0) and np.all(rec.sub > 0)


def test_symmetrize_k2(p123):
    rec = build_recurrence(2, SpeciesExponents(0, 0, 0), p123)
    d, e = symmetrize(rec)
    np.testing.assert_array_equal(d, [0, 0])
    np.testing.assert_allclose(e, [1 / SQ3], rtol=1e-15)


def test_nonsymmetrizable_detected(p123):
    rec = build_recurrence(6, SpeciesExponents(0, 0, 0), p123)
    bad = LameRecurrence(rec.m, rec.rho, rec.beta_sq, rec.mu, rec.diag, rec.sup, -rec.sub)
    with pytest.raises(NonSymmetrizable):
        symmetrize(bad)


def test_canonical_k2(p123):
    rec = build_recurrence(2, SpeciesExponents(0, 0, 0), p123)
    np.testing.assert_allclose(canonical_eigenvalues(rec), [-1 / SQ3, 1 / SQ3], rtol=1e-15)


@pytest.mark.parametrize("g", ALL_GAMMAS)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_symmetrized_vs_characteristic_polynomial(g, m):
    p = validate_parameters(0.7, 1.9, 4.2)
    rec = build_recurrence(2 * m + g.total, g, p)
    # oracle: exact characteristic polynomial of the nonsymmetric matrix
    M = sp.Matrix(dense(rec).tolist()) / sp.nsimplify(rec.mu)
    lam = sp.symbols("lam")
    roots = sorted(float(sp.re(r)) for r in sp.Poly(M.charpoly(lam).as_expr(), lam).nroots(n=30))
    np.testing.assert_allclose(canonical_eigenvalues(rec), roots, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("a", [(1, 2, 3), (1, 1.01, 1.02), (0.3, 2.0, 2.1), (1, 5, 6), (2, 2.5, 9)])
def test_distinct_and_in_van_vleck_range(a):
    p = validate_parameters(*a)
    for k in [40, 121, 400]:
        for ent in species_for_degree(k):
            rec = build_recurrence(k, ent.gamma, p)
            r = canonical_eigenvalues(rec)
            assert r.shape == (rec.m + 1,)
            assert van_vleck_canonical_ok(r, p.beta_sq)
            if rec.m:
                assert np.min(np.diff(r)) > 0


def test_eigenvector_k2(p123):
    rec = build_recurrence(2, SpeciesExponents(0, 0, 0), p123)
    np.testing.assert_allclose(eigenvector(rec, SQ3 / 2), [1, SQ3], rtol=1e-12)
    np.testing.assert_allclose(eigenvector(rec, -SQ3 / 2), [1, -SQ3], rtol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 30), st.sampled_from(ALL_GAMMAS), st.floats(0.05, 8.0))
def test_eigenvector_residual(m, g, b2):
    p = validate_parameters(1.0, 2.0, 2.0 + b2)
    rec = build_recurrence(2 * m + g.total, g, p)
    for r in canonical_eigenvalues(rec)[:: max(1, m // 4)]:
        a = eigenvector(rec, r * rec.mu)
        assert a[0] == 1.0
        assert recurrence_residual(rec, r * rec.mu, a) <= 1e-9 * rec.mu * np.abs(a).max()
