"""Command line entry point.

Exit codes: 0 success with all checks passing, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import brauer, partition
from .diagram import DiagramError, enumerate_diagrams
from .fixtures import check_theorem_conditions
from .formats import (FormatError, parse_diagram, parse_rational, parse_tensor, rational_list,
                      serialize_quantum, serialize_tensor)
from .gram import circle_power, from_model, gram_matrix
from .join import KTooLarge, k_join
from .model import ModelError, is_rmatrix, residuals
from .solver import SolverConfig, solve


class InputError(Exception):
    pass


def _read(path: str, flag: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{flag}: cannot read {path}: {exc.strerror}") from None


def _load(parser, path, flag, **kw):
    try:
        return parser(_read(path, flag), **kw)
    except (FormatError, DiagramError, ModelError) as exc:
        raise InputError(f"{flag}: {path}: {exc}") from None


def _rational_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_eval(args) -> int:
    d = _load(parse_diagram, args.diagram, "--diagram")
    r = _load(parse_tensor, args.tensor, "--tensor", exact=not args.float)
    fn = partition.eval_bruteforce if args.brute else partition.eval
    value = fn(r, d)
    out = {"value": float(value)}
    if isinstance(value, Fraction):
        out["exact"] = _rational_str(value)
    _emit(out)
    return 0


def cmd_check(args) -> int:
    r = _load(parse_tensor, args.tensor, "--tensor", exact=True)
    res = residuals(r)
    ok = max(res) <= args.tol
    out = {
        "n": r.n,
        "residuals": [float(x) for x in res],
        "residuals_exact": [_rational_str(x) for x in res],
        "tol": args.tol,
        "is_rmatrix": ok,
    }
    if args.diagram_level:
        gaps = check_theorem_conditions(r.as_float())
        out["theorem_gaps"] = [float(g) for g in gaps]
    _emit(out)
    return 0 if ok else 1


def cmd_join(args) -> int:
    g = _load(parse_diagram, args.left, "--left")
    h = _load(parse_diagram, args.right, "--right")
    try:
        q = k_join(g, h, args.k)
    except KTooLarge as exc:
        raise InputError(f"--k: {exc}") from None
    sys.stdout.write(serialize_quantum(q))
    return 0


def _family(args):
    fam = []
    if args.enumerate is not None:
        fam += enumerate_diagrams(args.enumerate, args.max_circles)
    for item in args.family or []:
        p = Path(item)
        files = sorted(p.glob("*.diag")) if p.is_dir() else [p]
        fam += [_load(parse_diagram, str(f), "--family") for f in files]
    if not fam:
        raise InputError("--family: no diagrams given (use --family or --enumerate)")
    return fam


def cmd_gram(args) -> int:
    fam = _family(args)
    if args.tensor:
        f = from_model(_load(parse_tensor, args.tensor, "--tensor"))
    else:
        f = circle_power(args.circle_power)
    report = gram_matrix(f, fam, args.k)
    print(report.to_json())
    return 0 if report.is_psd() else 1


def _brauer_spectrum(args):
    x = args.x
    eig = np.linalg.eigvalsh(brauer.a_matrix(float(x), args.ground))
    pred = np.sort(np.array(brauer.predicted_spectrum(x, args.ground), dtype=float))
    ok = len(eig) == len(pred) and bool(np.all(np.abs(np.sort(eig) - pred) <= 1e-8))
    return {
        "mode": "spectrum",
        "matchings": len(eig),
        "x": _rational_str(x),
        "eigenvalues": [float(e) for e in eig],
        "predicted": {",".join(map(str, lam)): {"mu": float(brauer.mu(lam, x)),
                                                  "multiplicity": brauer.standard_tableaux_count(lam)}
                      for lam in brauer.even_partitions(args.ground)},
        "pass": ok,
    }


def _tableau_for(lam, k):
    if lam == (8 * k,):
        return brauer.single_row_tableau(k)
    if lam == (8 * k - 2, 2):
        return brauer.two_row_tableau(k)
    if lam == (8,) * k:
        return brauer.rows_of_eight_tableau(k)
    firsts, nxt = [], 1
    for t in lam:
        firsts.append(list(range(nxt, nxt + t // 2)))
        nxt += t // 2
    return brauer.paired_tableau(firsts, k)


def _brauer_eigencheck(args):
    if args.ground != 8 * args.k:
        raise InputError(f"--eigencheck: needs --ground {8 * args.k} for k={args.k}")
    try:
        lam = tuple(int(t) for t in args.eigencheck.split(","))
        t = _tableau_for(lam, args.k)
    except ValueError as exc:
        raise InputError(f"--eigencheck: {exc}") from None
    x = args.x
    v = brauer.tableau_eigenvector(t)
    u = brauer.symmetrized_u(v, args.k)
    m = brauer.mu(lam, x)
    qsize = len(brauer.q_group(args.k))
    v_ok = brauer.check_eigenvector(brauer.a_matrix(x, args.ground), v, m)
    u_ok = brauer.check_eigenvector(brauer.aq_matrix(x, args.k), u, qsize * m)
    uf = brauer.u_f_coefficient(t)
    return {
        "mode": "eigencheck",
        "lambda": list(lam),
        "tableau": [list(r) for r in t.rows],
        "x": _rational_str(x),
        "mu": _rational_str(Fraction(m)),
        "A_v_equals_mu_v": v_ok,
        "AQ_u_equals_Qmu_u": u_ok,
        "u_F": uf,
        "pass": v_ok and u_ok and uf != 0,
    }


def _brauer_psd_scan(args):
    rows = []
    for x in args.psd_scan:
        eig = np.linalg.eigvalsh(brauer.aq_matrix(float(x), args.k))
        norm = float(np.max(np.abs(eig)))
        rows.append({"x": _rational_str(x), "min_eigenvalue": float(eig[0]), "norm": norm,
                     "psd": bool(eig[0] >= -1e-8 * norm)})
    return {"mode": "psd-scan", "k": args.k, "scan": rows, "pass": True}


def cmd_brauer(args) -> int:
    if args.ground % 2 or args.ground < 2:
        raise InputError("--ground: must be a positive even integer")
    if args.psd_scan is not None:
        out = _brauer_psd_scan(args)
    elif args.eigencheck is not None:
        out = _brauer_eigencheck(args)
    else:
        if args.x is None:
            raise InputError("--x: required for --spectrum")
        out = _brauer_spectrum(args)
    _emit(out)
    return 0 if out["pass"] else 1


def cmd_solve(args) -> int:
    cfg = SolverConfig(n=args.n, seed=args.seed, max_iterations=args.max_iter, tol=args.tol,
                       scale=args.scale)
    result = solve(cfg)
    text = serialize_tensor(result.model)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    summary = {
        "n": args.n, "seed": args.seed, "status": result.status, "objective": result.objective,
        "accepted_steps": result.accepted_steps,
        "is_rmatrix_1e-3": is_rmatrix(result.model, 1e-3),
    }
    log_text = json.dumps({"summary": summary, "log": result.log}, indent=1)
    if args.log:
        Path(args.log).write_text(log_text + "\n", encoding="utf-8")
    else:
        print(json.dumps(summary), file=sys.stderr)
    return 0 if result.converged else 1


def _rational_arg(text):
    try:
        return parse_rational(text)
    except FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list_arg(text):
    try:
        return rational_list(text)
    except FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vlink", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="partition function f_R(G)")
    e.add_argument("--diagram", required=True)
    e.add_argument("--tensor", required=True)
    e.add_argument("--brute", action="store_true", help="sum over all colorings")
    e.add_argument("--float", action="store_true", help="skip the exact rational path")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check-rmatrix", help="R-matrix residuals")
    c.add_argument("--tensor", required=True)
    c.add_argument("--tol", type=float, default=1e-9)
    c.add_argument("--diagram-level", action="store_true")
    c.set_defaults(func=cmd_check)

    j = sub.add_parser("join", help="k-join of two diagrams")
    j.add_argument("--left", required=True)
    j.add_argument("--right", required=True)
    j.add_argument("--k", type=int, required=True)
    j.set_defaults(func=cmd_join)

    g = sub.add_parser("gram", help="join matrix M_{f,k} and its PSD test")
    g.add_argument("--family", nargs="+", help="diagram files or directories of *.diag files")
    g.add_argument("--enumerate", type=int, metavar="C", help="add all diagrams with <= C crossings")
    g.add_argument("--max-circles", type=int, default=0)
    g.add_argument("--k", type=int, required=True)
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--tensor")
    src.add_argument("--circle-power", type=_rational_arg)
    g.set_defaults(func=cmd_gram)

    b = sub.add_parser("brauer", help="A(x) spectra, eigenvector checks, A^Q PSD scans")
    b.add_argument("--ground", type=int, required=True, help="ground set size 2m")
    b.add_argument("--x", type=_rational_arg)
    b.add_argument("--k", type=int, default=1)
    mode = b.add_mutually_exclusive_group()
    mode.add_argument("--spectrum", action="store_true")
    mode.add_argument("--eigencheck", metavar="LAMBDA", help="even partition, e.g. 6,2")
    mode.add_argument("--psd-scan", type=_rational_list_arg, metavar="X-LIST")
    b.set_defaults(func=cmd_brauer)

    s = sub.add_parser("solve", help="search for an R-matrix by gradient descent")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-iter", type=int, default=20000)
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--scale", type=float, default=1.0)
    s.add_argument("--out")
    s.add_argument("--log")
    s.set_defaults(func=cmd_solve)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command == "brauer" and args.eigencheck is not None and args.x is None:
        parser.error("--x is required with --eigencheck")
    try:
        return args.func(args)
    except (InputError, brauer.SizeLimit, partition.SizeLimit, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
