"""Compiled vs pure-numpy kernels.

    python3 benchmarks/bench_kernels.py [--k 100 300 1000] [--repeat 5]

Times three workloads per backend and degree: the Sturm bisection on the
largest species block, the diagonal of (A/mu)**8 used for trace moments,
and a full ``degree_spectrum``.  Eigenvalues from both backends are also
compared bit for bit.
"""
import argparse
import sys
import timeit

import numpy as np

from asymtop import kernels
from asymtop.lame import build_recurrence, symmetrize
from asymtop.params import SpeciesExponents, validate_parameters
from asymtop.spectrum import degree_spectrum
from asymtop.tridiag import eigvalsh_tridiagonal


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def run(ks, repeat, out=sys.stdout):
    p = validate_parameters(1, 2, 3)
    names = sorted(kernels.backends())
    rows = []
    for k in ks:
        k2 = k - k % 2
        rec = build_recurrence(k2, SpeciesExponents(0, 0, 0), p)
        d, e = symmetrize(rec)
        scaled = (rec.diag / rec.mu, rec.sup / rec.mu, rec.sub / rec.mu)
        vals = {}
        for name in names:
            impl = kernels.backends()[name]
            vals[name] = eigvalsh_tridiagonal(d, e, backend=name)
            rows.append((k, name,
                         best(lambda: eigvalsh_tridiagonal(d, e, backend=name), repeat),
                         best(lambda: impl.power_trace_diagonal(*scaled, 8), repeat),
                         best(lambda: degree_spectrum(k, p, backend=name), max(1, repeat // 2))))
        same = len(names) < 2 or np.array_equal(vals[names[0]], vals[names[1]])
        rows.append((k, "identical", same, None, None))

    print(f"{'k':>6} {'backend':>9} {'bisect [s]':>12} {'power8 [s]':>12} {'spectrum [s]':>13}", file=out)
    for k, name, a, b, c in rows:
        if name == "identical":
            print(f"{k:>6} {'':>9} backends bitwise identical: {a}", file=out)
        else:
            print(f"{k:>6} {name:>9} {a:12.5f} {b:12.5f} {c:13.5f}", file=out)
    if "cython" in names:
        for k in ks:
            t = {n: r[4] for r in rows for n in names if r[0] == k and r[1] == n}
            print(f"k={k}: cython speed-up on degree_spectrum x{t['python'] / t['cython']:.1f}", file=out)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[100, 300, 1000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    run(args.k, args.repeat)


if __name__ == "__main__":
    main()
