"""Pure numpy versions of the compiled kernels.

Same signatures and the same floating-point operation order as
``_kernels.pyx``: bisection advances all open brackets in lockstep,
vectorised over shifts instead of looped.
"""
import numpy as np


def _counts(d, e2, pivmin, x):
    q = d[0] - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    c = (q < 0).astype(np.int64)
    for i in range(1, d.shape[0]):
        q = d[i] - x - e2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        c += q < 0
    return c


def sturm_count(diag, e2, pivmin, x):
    d = np.asarray(diag, dtype=np.float64)
    if d.shape[0] == 0:
        return 0
    return int(_counts(d, np.asarray(e2, dtype=np.float64), pivmin, np.array([x]))[0])


def bisect_all(diag, e2, pivmin, glo, ghi, rtol, atol, maxiter):
    d = np.asarray(diag, dtype=np.float64)
    e2 = np.asarray(e2, dtype=np.float64)
    n = d.shape[0]
    idx = np.arange(n)
    lo = np.full(n, float(glo))
    hi = np.full(n, float(ghi))
    active = np.ones(n, dtype=bool)
    ok = True
    it = 0
    while True:
        scale = np.maximum(np.abs(lo), np.abs(hi))
        tol = np.maximum(rtol * scale, atol)
        mid = 0.5 * (lo + hi)
        active &= (hi - lo > tol) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        if it >= maxiter:
            ok = False
            break
        it += 1
        sel = np.flatnonzero(active)
        c = _counts(d, e2, pivmin, mid[sel])
        below = c > idx[sel]
        hi[sel[below]] = mid[sel[below]]
        lo[sel[~below]] = mid[sel[~below]]
    return 0.5 * (lo + hi), ok


def power_trace_diagonal(diag, sup, sub, n):
    dg = np.asarray(diag, dtype=np.float64)
    up = np.asarray(sup, dtype=np.float64)
    lw = np.asarray(sub, dtype=np.float64)
    size = dg.shape[0]
    width = 2 * n + 1
    # window row i holds global indices i-n .. i+n
    jg = np.arange(size)[:, None] - n + np.arange(width)[None, :]
    inside = (jg >= 0) & (jg < size)
    jc = np.clip(jg, 0, size - 1)
    dd = np.where(inside, dg[jc], 0.0)
    has_left = inside & (jg >= 1)
    has_left[:, 0] = False
    left = np.where(has_left, lw[np.clip(jg - 1, 0, max(size - 2, 0))] if size > 1 else 0.0, 0.0)
    has_right = inside & (jg + 1 < size)
    has_right[:, -1] = False
    right = np.where(has_right, up[np.clip(jg, 0, max(size - 2, 0))] if size > 1 else 0.0, 0.0)
    u = np.zeros((size, width))
    u[:, n] = 1.0
    for _ in range(n):
        w = dd * u
        w[:, 1:] = w[:, 1:] + left[:, 1:] * u[:, :-1]
        w[:, :-1] = w[:, :-1] + right[:, :-1] * u[:, 1:]
        u = w
    return u[:, n].copy()
