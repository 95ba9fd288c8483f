"""Command-line entry point: ``millerzeros <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import arcbound, cm, qseries, szego
from .miller import cached_faber
from .report import REPORT_KINDS, emit_report
from .roots import write_zeros_csv, write_zeros_json, zeros_of_miller
from .scan import ScanRequest, run_scan

__all__ = ["main", "build_parser", "emit_report"]

LONG_RUNNING_KS = (18000,)


def _parse_ks(spec: str) -> list[int]:
    """``"a,b,c"`` or ``"start:stop:step"`` (stop inclusive)."""
    if ":" in spec:
        parts = [int(x) for x in spec.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 2
        return list(range(start, stop + (1 if step > 0 else -1), step))
    return [int(x) for x in spec.split(",") if x.strip()]


def _emit(obj, out) -> None:
    text = json.dumps(obj, indent=1, default=str) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_series(args) -> int:
    s = qseries.cached_series(args.name, args.order, args.cache_dir)
    lines = [f"{args.name} order {args.order} lead {s.lead}"] + [str(c) for c in s.coeffs]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_faber(args) -> int:
    P = cached_faber(args.k, args.m, args.cache_dir)
    if args.json:
        _emit({"k": P.k, "m": P.m, "D": P.D, "coeffs": [str(c) for c in P.y]}, args.out)
    else:
        text = str(P) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def cmd_zeros(args) -> int:
    zs = zeros_of_miller(args.k, args.m, tol=args.tolerance, prec=args.precision_bits)
    if args.csv:
        write_zeros_csv(zs, args.csv)
    if args.json:
        write_zeros_json(zs, args.json)
    on, off, ell = zs.counts
    print(f"k={args.k} m={args.m}: {on} on arc, {off} off arc, {ell} elliptic")
    return 0


def cmd_scan(args) -> int:
    ks = _parse_ks(args.k)
    if not args.long_running:
        big = [k for k in ks if abs(k) >= min(LONG_RUNNING_KS)]
        if big:
            print(f"refusing weights {big} without --long-running (expect hours)", file=sys.stderr)
            return 2
    req = ScanRequest(ks, tolerance=args.tolerance, out=args.out, jobs=args.jobs, cache_dir=args.cache_dir)

    def fmt(m):
        return "absent" if m is None else f"m>={m}"

    for r in run_scan(req):
        print(f"k={r.k} l={r.ell} not-all: {fmt(r.min_m_not_all_on_arc)} none: {fmt(r.min_m_no_roots_on_arc)}"
              + ("" if r.verified else f" UNVERIFIED {r.errors}"))
    return 0


def cmd_bounds(args) -> int:
    table = arcbound.grid_search(args.mode, args.intervals, args.bstep, prec=args.precision_bits or 53,
                                 b_lower=args.b_lower, b_upper=args.b_upper, residue_terms=args.residues,
                                 certify=args.certify)
    if args.csv:
        table.write_csv(args.csv)
    if args.json:
        table.write_json(args.json)
    print(f"mode={table.mode} N={table.N} Bstep={table.Bstep}")
    print(f"delta_cutoff_all = {table.delta_cutoff_all:.6f}")
    print(f"delta_cutoff_none = {table.delta_cutoff_none:.6f}")
    if table.mode == "holomorphic":
        print("P convention: max(0, ...) - eps (the printed min(0, ...) is never positive)")
    return 0


def cmd_szego(args) -> int:
    prec = args.precision_bits or 53
    if args.what == "cutoffs":
        _emit(szego.cutoffs(prec).as_dict(), args.out)
        return 0
    if args.what == "texp":
        roots = szego.trunc_exp_roots(args.D)
        _emit({"D": args.D, "roots": [[z.real, z.imag] for z in roots],
               "distance_to_S": szego.szego_distance(args.D)}, args.out)
        return 0
    if args.what == "S":
        curve = szego.szego_curve(args.nsamples)
    elif args.what in ("L+", "L-"):
        curve = szego.log_szego_curve(1 if args.what == "L+" else -1, args.nsamples)
    elif args.what == "sdelta":
        curve = szego.s_delta_curve(args.delta, args.nsamples, prec, args.construction)
    else:
        curve = szego.c_delta_hull(args.delta, args.nsamples, prec)
    if args.out:
        curve.write_csv(args.out)
    else:
        for z in curve.samples:
            print(f"{float(z.real)!r},{float(z.imag)!r}")
    return 0


def cmd_cm(args) -> int:
    if args.what == "hcp":
        H = cm.hilbert_class_poly(args.d, args.precision_bits)
        _emit({"disc": H.disc, "h": H.h, "coeffs": [str(c) for c in H.coeffs]}, args.out)
    elif args.what == "d1":
        rows = cm.d1_classification()
        _emit([{"disc": r["disc"], "zero": r["zero"], "kprime": r["kprime"], "k": r["k"], "weak": r["weak"]}
               for r in rows], args.out)
    elif args.what == "check":
        rep = cm.check_cm_zero(args.k, args.m, args.d, args.precision_bits)
        _emit(rep.__dict__, args.out)
    else:
        _emit(cm.modp_screen(args.kprime, args.D, args.ell_eval, args.primes), args.out)
    return 0


def cmd_report(args) -> int:
    params = json.loads(args.params) if args.params else {}
    if args.kind == "zeros":
        params.setdefault("tolerance", args.tolerance)
    for line in emit_report(args.kind, params, args.out):
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="millerzeros", description="Zeros of Miller basis modular forms.")
    p.add_argument("--precision-bits", type=int, default=None, help="working precision (default: automatic)")
    p.add_argument("--tolerance", type=float, default=1e-20, help="root certification radius")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    p.add_argument("--cache-dir", default=None, help="directory for cached series, Faber polynomials and counts")
    p.add_argument("--long-running", action="store_true", help="allow computations that take hours")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("series", help="q-expansion of E4, E6, ..., Delta, j, InvDelta")
    s.add_argument("name")
    s.add_argument("--order", type=int, default=10)
    s.add_argument("--out")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("faber", help="Faber polynomial of g_{k,m}")
    s.add_argument("k", type=int)
    s.add_argument("m", type=int)
    s.add_argument("--json", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_faber)

    s = sub.add_parser("zeros", help="certified zeros of g_{k,m} in the fundamental domain")
    s.add_argument("k", type=int)
    s.add_argument("m", type=int)
    s.add_argument("--csv")
    s.add_argument("--json")
    s.set_defaults(func=cmd_zeros)

    s = sub.add_parser("scan", help="m-thresholds for arc membership")
    s.add_argument("--k", required=True, help="comma list or start:stop:step")
    s.add_argument("--out")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("bounds", help="grid search for the arc bounds")
    s.add_argument("--mode", choices=("holomorphic", "weak"), default="holomorphic")
    s.add_argument("--intervals", type=int, default=1000)
    s.add_argument("--bstep", type=float, default=0.0005)
    s.add_argument("--b-lower", choices=("half", "tan"), default="half")
    s.add_argument("--b-upper", choices=("sin_alpha", "sin_beta"), default="sin_alpha")
    s.add_argument("--residues", action="store_true", help="include residue-set terms")
    s.add_argument("--certify", action="store_true", help="interval re-evaluation at the chosen B")
    s.add_argument("--csv")
    s.add_argument("--json")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("szego", help="Szegő curves, cutoffs and truncated exponentials")
    s.add_argument("what", choices=("S", "L+", "L-", "sdelta", "hull", "cutoffs", "texp"))
    s.add_argument("--delta", type=float, default=0.98)
    s.add_argument("--nsamples", type=int, default=400)
    s.add_argument("--construction", choices=("auto", "exact", "asymptotic"), default="auto")
    s.add_argument("--D", type=int, default=40)
    s.add_argument("--out")
    s.set_defaults(func=cmd_szego)

    s = sub.add_parser("cm", help="class polynomials and algebraic zeros")
    s.add_argument("what", choices=("hcp", "d1", "check", "screen"))
    s.add_argument("--d", type=int, default=19)
    s.add_argument("--k", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--kprime", type=int, default=0)
    s.add_argument("--D", type=int, default=3)
    s.add_argument("--ell-eval", type=int, default=0)
    s.add_argument("--primes", type=int, default=100)
    s.add_argument("--out")
    s.set_defaults(func=cmd_cm)

    s = sub.add_parser("report", help="data files plus a pass/fail summary")
    s.add_argument("kind", choices=REPORT_KINDS)
    s.add_argument("--out", default="report")
    s.add_argument("--params", help="JSON object of report parameters")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tolerance <= 0 or not math.isfinite(args.tolerance):
        print("--tolerance must be positive", file=sys.stderr)
        return 2
    if args.cache_dir:
        os.makedirs(args.cache_dir, exist_ok=True)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
