"""Command-line front end.

Exit codes: 0 success, 2 bad parameters, 3 solver failure, 4 verification
failure, 5 quadrature failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import dos as dosmod
from . import lame, oracle
from .errors import Inconclusive, ParameterError, QuadratureNotConverged, SolverError
from .harmonics import degree_harmonics
from .params import SpeciesExponents, parse_alpha
from .spectrum import degree_spectra, degree_spectrum, operator_sandwich, trace_check, van_vleck_window

log = logging.getLogger("asymtop")

EXIT_OK, EXIT_PARAM, EXIT_SOLVER, EXIT_VERIFY, EXIT_QUAD = 0, 2, 3, 4, 5


def fmt(x) -> str:
    return format(float(x), ".17g")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, newline="\n")


def _gamma(text: str) -> SpeciesExponents:
    try:
        return SpeciesExponents(*(int(s) for s in text.split(",")))
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"bad gamma {text!r}: {exc}") from None


def _ks(values) -> list[int]:
    out = []
    for v in values:
        out.extend(int(s) for s in str(v).split(",") if s.strip())
    return out


# --- subcommands ----------------------------------------------------------

def cmd_spectrum(args) -> int:
    p = parse_alpha(args.alpha)
    if args.k < 0:
        raise ParameterError("k must be >= 0")
    s = degree_spectrum(args.k, p, jobs=args.jobs)
    dup = {i for pair in s.near_duplicates() for i in pair}
    header = ["k", "species", "g0", "g1", "g2", "index", "lambda", "nu_tilde_over_mu", "near_duplicate"]
    rows = [
        [ln.k, ln.species, ln.gamma.g0, ln.gamma.g1, ln.gamma.g2, ln.index, ln.lam,
         ln.nu_tilde_over_mu, int(i in dup)]
        for i, ln in enumerate(s.lines)
    ]
    if args.format == "json":
        _emit(_json_text({"alpha": list(p.alpha), "k": s.k,
                          "lines": [dict(zip(header, r)) for r in rows]}), args.output)
    else:
        _emit(_csv_text(header, rows), args.output)
    return EXIT_OK


def _verify_degree(k, p, spec_vals, oracle_tol, trace_tol):
    entry = {"k": k}
    try:
        vals = np.sort(spec_vals)
        entry["count_ok"] = bool(vals.shape[0] == 2 * k + 1)
        lo, hi = van_vleck_window(k, p)
        entry["vanvleck_ok"] = bool(np.all(vals > lo) and np.all(vals < hi))
        slo, shi = operator_sandwich(k, p)
        slack = 1e-12 * max(shi, 1.0)
        entry["sandwich_ok"] = bool(np.all(vals >= slo - slack) and np.all(vals <= shi + slack))
        computed = math.fsum(vals)
        expected = p.total * k * (k + 1) * (2 * k + 1) / 3.0
        entry["trace_rel_err"] = abs(computed - expected) / expected if expected else abs(computed)
        entry["oracle_max_rel_dev"] = oracle.max_relative_deviation(vals, oracle.oracle_spectrum(k, p))
        entry["passed"] = bool(
            entry["count_ok"] and entry["vanvleck_ok"] and entry["sandwich_ok"]
            and entry["trace_rel_err"] <= trace_tol and entry["oracle_max_rel_dev"] <= oracle_tol
        )
    except SolverError as exc:
        entry["error"] = str(exc)
        entry["passed"] = False
    return entry


def cmd_verify(args) -> int:
    p = parse_alpha(args.alpha)
    if args.kmax < 1:
        raise ParameterError("kmax must be >= 1")
    ks = list(range(1, args.kmax + 1))

    def one(k):
        try:
            vals = degree_spectrum(k, p).values
        except SolverError as exc:
            return {"k": k, "error": str(exc), "passed": False}
        return _verify_degree(k, p, vals, args.oracle_tol, args.trace_tol)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            degrees = list(pool.map(one, ks))
    else:
        degrees = [one(k) for k in ks]
    failing = [d["k"] for d in degrees if not d["passed"]]
    report = {
        "alpha": list(p.alpha),
        "kmax": args.kmax,
        "thresholds": {"oracle": args.oracle_tol, "trace": args.trace_tol},
        "degrees": degrees,
        "passed": not failing,
        "first_failing_k": failing[0] if failing else None,
    }
    _emit(_json_text(report), args.output)
    if failing:
        print(f"verification failed at k={failing[0]}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_dos(args) -> int:
    p = parse_alpha(args.alpha)
    ks = _ks(args.k)
    if not ks or min(ks) < 1:
        raise ParameterError("dos needs at least one k >= 1")
    ks = sorted(set(ks))
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    spectra = {s.k: s.values for s in degree_spectra(ks, p, jobs=args.jobs)}
    written = []

    if args.bins:
        for k in ks:
            counts, edges = dosmod.samples_from_values(k, spectra[k]).histogram(args.bins)
            total = counts.sum()
            rows = [[k, float(edges[i]), float(edges[i + 1]), int(counts[i]),
                     float(counts[i] / (total * (edges[i + 1] - edges[i])))] for i in range(len(counts))]
            path = outdir / f"histogram_k{k}.csv"
            path.write_text(_csv_text(["k", "bin_lo", "bin_hi", "count", "density"], rows), newline="\n")
            written.append(path)

    fs = dosmod.parse_bumps(args.bumps) if args.bumps else []
    if fs:
        want = {"resolved": [dosmod.RESOLVED], "printed": [dosmod.PRINTED], "both": list(dosmod.VARIANTS)}[args.variant]
        limits = {v: [dosmod.limit_dos(f, p, v, args.quad_order) for f in fs] for v in want}
        rows = []
        for k in ks:
            emp = dosmod.samples_from_values(k, spectra[k])
            for i, f in enumerate(fs):
                e = emp.pair(f)
                lr = limits.get(dosmod.RESOLVED, [None] * len(fs))[i]
                lp = limits.get(dosmod.PRINTED, [None] * len(fs))[i]
                rows.append([k, float(f.c), float(f.w), float(e),
                             "" if lr is None else float(lr), "" if lp is None else float(lp),
                             "" if lr is None else float(abs(e - lr)), "" if lp is None else float(abs(e - lp))])
        path = outdir / "bumps.csv"
        path.write_text(_csv_text(["k", "c", "w", "empirical", "limit_resolved", "limit_printed",
                                   "abs_err_resolved", "abs_err_printed"], rows), newline="\n")
        written.append(path)
        if len(ks) > 1:
            path = outdir / "discrimination.json"
            try:
                rep = dosmod.discriminate_variants(p, ks, fs, quad_order=args.quad_order,
                                                   spectra=spectra)
                verdict = rep.to_dict()
            except Inconclusive as exc:
                verdict = {"ks": ks, "winner": None, "inconclusive": str(exc)}
            path.write_text(_json_text(verdict), newline="\n")
            written.append(path)
            if verdict["winner"] is None:
                print(f"variant discrimination inconclusive: {verdict['inconclusive']}", file=sys.stderr)
                return EXIT_VERIFY
    for path in written:
        print(path)
    return EXIT_OK


def cmd_moments(args) -> int:
    p = parse_alpha(args.alpha)
    g = _gamma(args.gamma)
    if args.m < 1 or args.nmax < 1:
        raise ParameterError("m and nmax must be >= 1")
    rec = lame.build_recurrence(2 * args.m + g.total, g, p)
    rows = []
    for n in range(1, args.nmax + 1):
        emp = dosmod.trace_moment_empirical(rec, n)
        lim = dosmod.trace_moment_limit(n, p.beta_sq)
        rows.append([n, float(emp), float(lim), float(abs(emp - lim))])
    header = ["n", "empirical", "limit", "abs_err"]
    if args.format == "json":
        _emit(_json_text({"alpha": list(p.alpha), "m": args.m, "gamma": list(g.as_tuple()),
                          "rows": [dict(zip(header, r)) for r in rows]}), args.output)
    else:
        _emit(_csv_text(header, rows), args.output)
    return EXIT_OK


def cmd_harmonics(args) -> int:
    p = parse_alpha(args.alpha)
    if args.k < 0:
        raise ParameterError("k must be >= 0")
    out = []
    for h in degree_harmonics(args.k, p):
        out.append({
            "gamma": list(h.harmonic.gamma.as_tuple()),
            "lambda": h.lam,
            "theta_roots": list(h.harmonic.theta_roots),
            "terms": h.harmonic.poly.to_list(),
            "residuals": h.residuals(p),
        })
    _emit(_json_text({"alpha": list(p.alpha), "k": args.k, "harmonics": out}), args.output)
    return EXIT_OK


# --- parser ---------------------------------------------------------------

def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ASYMTOP_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asymtop", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--alpha", required=True, help="squared frequencies a0,a1,a2 with 0<a0<a1<a2")
        sp.add_argument("--jobs", type=int, default=_default_jobs(), help="worker threads (default $ASYMTOP_JOBS or 1)")

    sp = sub.add_parser("spectrum", help="eigenvalues on the degree-k harmonics")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("verify", help="check recurrence spectra against the dense oracle")
    common(sp)
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--oracle-tol", type=float, default=1e-8)
    sp.add_argument("--trace-tol", type=float, default=1e-10)
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("dos", help="density of states: histograms, bump pairings, variant check")
    common(sp)
    sp.add_argument("--k", action="append", required=True, help="degree(s); repeat or comma-separate")
    sp.add_argument("--variant", choices=["resolved", "printed", "both"], default="both")
    sp.add_argument("--bumps", default="", help="bump test functions c:w,c:w,...")
    sp.add_argument("--bins", type=int, default=0)
    sp.add_argument("--quad-order", type=int, default=64)
    sp.add_argument("--outdir", default=".")
    sp.set_defaults(func=cmd_dos)

    sp = sub.add_parser("moments", help="trace moments of the recurrence matrix vs their limits")
    common(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--gamma", default="0,0,0")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("harmonics", help="Lame harmonics of degree k as polynomials (JSON)")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_harmonics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"asymtop: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except SolverError as exc:
        print(f"asymtop: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except QuadratureNotConverged as exc:
        print(f"asymtop: quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUAD
    except ValueError as exc:
        print(f"asymtop: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
