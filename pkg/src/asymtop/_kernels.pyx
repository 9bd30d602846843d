# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Sturm-sequence bisection and banded trace powers.

Signatures and floating-point operation order match :mod:`asymtop._fallback`,
so both backends return identical bits.
"""
import numpy as np

from libc.math cimport fabs

cdef double SAFMIN = 2.2250738585072014e-308


cdef inline Py_ssize_t _count(const double[::1] d, const double[::1] e2,
                              double pivmin, double x) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, c = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0:
        c += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0:
            c += 1
    return c


def sturm_count(diag, e2, double pivmin, double x):
    """Number of eigenvalues strictly below ``x``."""
    cdef const double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef const double[::1] ee = np.ascontiguousarray(e2, dtype=np.float64)
    if d.shape[0] == 0:
        return 0
    return int(_count(d, ee, pivmin, x))


def bisect_all(diag, e2, double pivmin, double glo, double ghi,
               double rtol, double atol, int maxiter):
    """Bisect every eigenvalue of a symmetric tridiagonal matrix in lockstep.

    ``e2`` holds squared off-diagonals.  All still-open brackets are advanced
    together, one Sturm sweep over the rows per step, so independent shifts
    overlap in the divider.  Returns ``(eigenvalues, ok)`` with ``ok`` False
    if ``maxiter`` steps were not enough.
    """
    cdef const double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef const double[::1] ee = np.ascontiguousarray(e2, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0]
    lo_arr = np.full(n, glo)
    hi_arr = np.full(n, ghi)
    mid_arr = np.empty(n)
    q_arr = np.empty(n)
    sel_arr = np.empty(n, dtype=np.intp)
    cnt_arr = np.empty(n, dtype=np.intp)
    cdef double[::1] lo = lo_arr
    cdef double[::1] hi = hi_arr
    cdef double[::1] mid = mid_arr
    cdef double[::1] q = q_arr
    cdef Py_ssize_t[::1] sel = sel_arr
    cdef Py_ssize_t[::1] cnt = cnt_arr
    cdef Py_ssize_t i, r, s, nsel
    cdef int it = 0
    cdef bint ok = True
    cdef double a, b, md, tol, scale, x, qq
    with nogil:
        while True:
            nsel = 0
            for i in range(n):
                a = lo[i]
                b = hi[i]
                scale = fabs(a) if fabs(a) > fabs(b) else fabs(b)
                tol = rtol * scale
                if tol < atol:
                    tol = atol
                md = 0.5 * (a + b)
                if b - a > tol and md > a and md < b:
                    sel[nsel] = i
                    mid[nsel] = md
                    nsel += 1
            if nsel == 0:
                break
            if it >= maxiter:
                ok = False
                break
            it += 1
            for s in range(nsel):
                qq = d[0] - mid[s]
                if fabs(qq) < pivmin:
                    qq = -pivmin
                q[s] = qq
                cnt[s] = 1 if qq < 0 else 0
            for r in range(1, n):
                for s in range(nsel):
                    qq = d[r] - mid[s] - ee[r - 1] / q[s]
                    if fabs(qq) < pivmin:
                        qq = -pivmin
                    q[s] = qq
                    if qq < 0:
                        cnt[s] += 1
            for s in range(nsel):
                i = sel[s]
                if cnt[s] > i:
                    hi[i] = mid[s]
                else:
                    lo[i] = mid[s]
    return 0.5 * (lo_arr + hi_arr), bool(ok)


def power_trace_diagonal(diag, sup, sub, int n):
    """Diagonal of ``A**n`` for tridiagonal ``A`` via windowed matvecs.

    ``A[j, j+1] = sup[j]`` and ``A[j+1, j] = sub[j]``.  Each basis vector
    only spreads ``n`` places, so the work is ``O(m * n**2)``.
    """
    cdef const double[::1] dg = np.ascontiguousarray(diag, dtype=np.float64)
    cdef const double[::1] up = np.ascontiguousarray(sup, dtype=np.float64)
    cdef const double[::1] lw = np.ascontiguousarray(sub, dtype=np.float64)
    cdef Py_ssize_t size = dg.shape[0]
    cdef Py_ssize_t width = 2 * n + 1
    res_arr = np.empty(size)
    ubuf = np.zeros(width)
    wbuf = np.zeros(width)
    cdef double[::1] res = res_arr
    cdef double[::1] u = ubuf
    cdef double[::1] w = wbuf
    cdef double[::1] tmp
    cdef Py_ssize_t i, r, jg, step
    cdef double s
    with nogil:
        for i in range(size):
            for r in range(width):
                u[r] = 0.0
            u[n] = 1.0
            for step in range(n):
                for r in range(width):
                    jg = i - n + r
                    if jg < 0 or jg >= size:
                        w[r] = 0.0
                        continue
                    s = dg[jg] * u[r]
                    if r > 0 and jg >= 1:
                        s = s + lw[jg - 1] * u[r - 1]
                    if r < width - 1 and jg + 1 < size:
                        s = s + up[jg] * u[r + 1]
                    w[r] = s
                tmp = u
                u = w
                w = tmp
            res[i] = u[n]
    return res_arr
