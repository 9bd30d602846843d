import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from asymtop import kernels
from asymtop.tridiag import count_below, eigvalsh_tridiagonal, gershgorin, inverse_iteration

BACKENDS = sorted(kernels.backends())


def random_tridiag(rng, n, scale=1.0):
    return rng.normal(size=n) * scale, rng.normal(size=n - 1) * scale


def test_compiled_backend_available():
    # the build ships the extension; the fallback exists for environments without a compiler
    assert "cython" in kernels.backends()


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", [1, 2, 3, 10, 57, 200])
def test_bisection_matches_lapack(backend, n):
    rng = np.random.default_rng(n)
    d, e = random_tridiag(rng, n)
    got = eigvalsh_tridiagonal(d, e, backend=backend)
    T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    ref = np.linalg.eigvalsh(T)
    assert np.all(np.diff(got) >= 0)
    np.testing.assert_allclose(got, ref, rtol=0, atol=1e-13 * max(1, np.abs(ref).max()))


def test_backends_bitwise_identical():
    rng = np.random.default_rng(7)
    for n in [5, 40, 301]:
        d, e = random_tridiag(rng, n, scale=3.0)
        a = eigvalsh_tridiagonal(d, e, backend="python")
        b = eigvalsh_tridiagonal(d, e, backend="cython")
        assert np.array_equal(a, b)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.integers(2, 30), elements=st.floats(-50, 50)), st.data())
def test_bisection_property(d, data):
    e = data.draw(arrays(np.float64, d.shape[0] - 1, elements=st.floats(-50, 50)))
    got = eigvalsh_tridiagonal(d, e)
    ref = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    np.testing.assert_allclose(got, ref, rtol=0, atol=1e-12 * max(1.0, np.abs(ref).max()))


def test_sturm_count_brute_force():
    rng = np.random.default_rng(3)
    d, e = random_tridiag(rng, 25)
    ref = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    for x in np.linspace(ref[0] - 1, ref[-1] + 1, 37):
        assert count_below(d, e, x) == int(np.sum(ref < x))


def test_zero_offdiagonal_multiplicity():
    d = np.array([1.0, 1.0, 2.0, 1.0])
    e = np.zeros(3)
    np.testing.assert_allclose(eigvalsh_tridiagonal(d, e), [1, 1, 1, 2], atol=1e-15)


def test_gershgorin_contains_spectrum():
    rng = np.random.default_rng(11)
    d, e = random_tridiag(rng, 40)
    lo, hi = gershgorin(d, e)
    ref = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    assert lo < ref[0] and ref[-1] < hi


def test_inverse_iteration_vectors():
    rng = np.random.default_rng(5)
    d, e = random_tridiag(rng, 30)
    T = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    lam = eigvalsh_tridiagonal(d, e)
    V = inverse_iteration(d, e, lam)
    assert np.max(np.abs(T @ V - V * lam)) < 1e-12
    assert np.max(np.abs(V.T @ V - np.eye(30))) < 1e-10


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n,power", [(1, 1), (2, 3), (12, 1), (12, 5), (40, 8), (9, 12)])
def test_power_trace_diagonal(backend, n, power):
    rng = np.random.default_rng(n * 31 + power)
    d, up, lw = rng.normal(size=n), rng.normal(size=n - 1), rng.normal(size=n - 1)
    A = np.diag(d) + np.diag(up, 1) + np.diag(lw, -1)
    ref = np.diag(np.linalg.matrix_power(A, power))
    got = kernels.backends()[backend].power_trace_diagonal(d, up, lw, power)
    np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-12 * np.abs(ref).max())


def test_power_trace_backends_identical():
    rng = np.random.default_rng(2)
    d, up, lw = rng.normal(size=60), rng.normal(size=59), rng.normal(size=59)
    a = kernels.backends()["python"].power_trace_diagonal(d, up, lw, 6)
    b = kernels.backends()["cython"].power_trace_diagonal(d, up, lw, 6)
    assert np.array_equal(a, b)
