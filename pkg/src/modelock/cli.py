"""Command line frontend.

Subcommands: scan | shrink | predict | trace | nearby | verify.
All numeric output uses 17 significant digits; CSV files carry
'#'-prefixed header comments echoing the resolved configuration, so a
result file documents the run that produced it.  Exit codes: 0 on
success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import re
import sys

import numpy as np

from . import predict as predict_mod
from . import scan as scan_mod
from . import shrink as shrink_mod
from . import trace as trace_mod
from .cycles import CycleError, s_formula_residual, solve_cycle
from .identities import IDENTITY_TOL, verify_shrink
from .maps import MapError, get_family
from .symbolic import RotSpec, Word, build_rotational
from .trace import TraceError

FMT = "%.17g"


def _fmt(x):
    return FMT % float(x)


def _parse_fixed(items):
    out = {}
    for item in items or []:
        for part in item.split(","):
            if not part:
                continue
            if "=" not in part:
                raise ValueError(f"--fixed expects name=value, got {part!r}")
            k, _, v = part.partition("=")
            out[k.strip()] = float(v)
    return out


def _base_point(fam, args):
    fixed = _parse_fixed(getattr(args, "fixed", None))
    mu = fixed.pop("mu", None)
    if mu is not None:
        return fam.default_point(mu=mu, **fixed)
    return fam.default_point(**fixed)


def _parse_spec(text):
    parts = [int(s) for s in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"--spec expects ell,m,n, got {text!r}")
    return RotSpec(*parts)


def _parse_pair(text, what):
    parts = [float(s) for s in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"{what} expects two comma-separated values")
    return parts


def _config_lines(args, fam):
    skip = {"func", "out", "format"}
    lines = [f"family = {fam.name}"]
    for key in sorted(vars(args)):
        if key in skip or key == "family":
            continue
        val = getattr(args, key)
        if val is None:
            continue
        lines.append(f"{key} = {val}")
    return lines


def _open_out(args):
    path = getattr(args, "out", None)
    if path and path != "-":
        return open(path, "w", encoding="utf-8"), True
    return sys.stdout, False


def _emit(args, fam, columns, rows, pretty_title):
    """Write rows as commented CSV or aligned text per --format."""
    fh, close = _open_out(args)
    try:
        if args.format == "csv":
            fh.write("# schema = modelock-csv-1\n")
            for line in _config_lines(args, fam):
                fh.write(f"# {line}\n")
            fh.write("# columns: " + ",".join(columns) + "\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
        else:
            fh.write(pretty_title + "\n")
            widths = [
                max(len(c), max((len(r[i]) for r in rows), default=0))
                for i, c in enumerate(columns)
            ]
            fh.write("  ".join(c.ljust(w) for c, w in zip(columns, widths))
                     + "\n")
            for row in rows:
                fh.write("  ".join(v.ljust(w) for v, w in zip(row, widths))
                         + "\n")
    finally:
        if close:
            fh.close()


def _solve_shrink(fam, args):
    spec = _parse_spec(args.spec)
    p0 = _base_point(fam, args)
    if args.slice:
        names = tuple(s.strip() for s in args.slice.split(","))
        if names != fam.slice_params:
            fam = dataclasses.replace(fam, slice_params=names)
    guess = _parse_pair(args.guess, "--guess")
    p0 = p0.with_values(**dict(zip(fam.slice_params, guess)))
    res = shrink_mod.find_shrink(fam, p0, spec)
    if not res.converged:
        raise shrink_mod.ShrinkError(
            f"did not converge in {res.iterations} iterations "
            f"(residual {res.residual:.3e})")
    data = shrink_mod.analyze(fam, res.point, spec)
    return fam, spec, res, data


# ---------------------------------------------------------------------------
# subcommands


def cmd_scan(args):
    fam = get_family(args.family)
    base = _base_point(fam, args)
    if args.slice:
        names = tuple(s.strip() for s in args.slice.split(","))
    else:
        names = fam.slice_params
    (xlo, xhi), (ylo, yhi) = (
        _parse_pair(args.x_range, "--x-range"),
        _parse_pair(args.y_range, "--y-range"),
    )
    nx, ny = (int(v) for v in _parse_pair(args.grid, "--grid"))
    cfg = scan_mod.ScanConfig(
        fam=fam, base=base, x_param=names[0], y_param=names[1],
        x_range=(xlo, xhi), y_range=(ylo, yhi), nx=nx, ny=ny,
        n_max=args.n_max, tie_break=args.tie_break,
        threads=args.threads or os.cpu_count() or 1,
    )
    rows = scan_mod.scan(cfg)
    out = []
    for row in rows:
        for c in row:
            if c.found:
                out.append([_fmt(c.x), _fmt(c.y), str(c.ell), str(c.m),
                            str(c.n), str(c.period), _fmt(c.rotnum),
                            _fmt(c.margin)])
            else:
                out.append([_fmt(c.x), _fmt(c.y), "", "", "", "", "", ""])
    _emit(args, fam,
          ["x", "y", "ell", "m", "n", "period", "rotnum", "margin"],
          out, f"scan of {fam.name} ({names[0]} x {names[1]})")
    return 0


def cmd_shrink(args):
    fam = get_family(args.family)
    fam, spec, res, data = _solve_shrink(fam, args)
    names = fam.slice_params
    if args.csv:
        args.out, args.format = args.csv, "csv"
        row = [[_fmt(res.point.xi[names[0]]), _fmt(res.point.xi[names[1]]),
                _fmt(res.eta), _fmt(res.nu), _fmt(data.a), _fmt(data.b),
                _fmt(data.c), _fmt(data.sigma)]]
        _emit(args, fam,
              ["xi1", "xi2", "eta", "nu", "a", "b", "c", "sigma"], row,
              "")
        return 0
    w = sys.stdout.write
    w(f"shrinking point of F[{spec.ell},{spec.m},{spec.n}] "
      f"(d = {spec.d}) for family {fam.name}\n")
    for name in names:
        w(f"  {name} = {_fmt(res.point.xi[name])}\n")
    w(f"  converged in {res.iterations} Newton iterations, "
      f"residual {res.residual:.3e}\n")
    w(f"  a = {_fmt(data.a)}\n  b = {_fmt(data.b)}\n  c = {_fmt(data.c)}\n")
    w(f"  sigma = {_fmt(data.sigma)}\n")
    w("  kappa table (side, chi):\n")
    for (side, chi), val in sorted(shrink_mod.kappa_table(data, 3).items()):
        w(f"    {side:5s} {chi:+d}: {_fmt(val)}\n")
    w("  identity report:\n")
    fails = 0
    for name, resid in verify_shrink(data).items():
        ok = resid <= IDENTITY_TOL
        fails += not ok
        w(f"    {'pass' if ok else 'FAIL'}  {name} ({resid:.2e})\n")
    w(f"  identities: {'all pass' if not fails else f'{fails} FAILED'}\n")
    return 0 if not fails else 1


def cmd_predict(args):
    fam = get_family(args.family)
    fam, spec, res, data = _solve_shrink(fam, args)
    ks = [int(s) for s in args.k.split(",")]
    names = fam.slice_params
    rows = []
    for k in ks:
        for pr in predict_mod.predict_table(data, res.jacobian, k,
                                            chi_max=args.chi_max):
            rows.append([pr.side, str(pr.chi), _fmt(pr.kappa), pr.kind,
                         _fmt(pr.theta), str(pr.k), _fmt(pr.eta),
                         _fmt(pr.nu), _fmt(pr.xi[names[0]]),
                         _fmt(pr.xi[names[1]])])
    _emit(args, fam,
          ["side", "chi", "kappa", "kind", "theta", "k", "eta", "nu",
           "xi1", "xi2"],
          rows, f"predictions near F[{spec.ell},{spec.m},{spec.n}]")
    return 0


def cmd_trace(args):
    fam = get_family(args.family)
    base = _base_point(fam, args)
    if args.word:
        word = Word(args.word)
    else:
        word = build_rotational(_parse_spec(args.spec))
    start = _parse_pair(args.start, "--start")
    win = (_parse_pair(args.x_range, "--x-range"),
           _parse_pair(args.y_range, "--y-range"))
    bt = trace_mod.trace_boundary(fam, base, word, args.index, start, win,
                                  max_steps=args.max_steps)
    rows = [[str(p.step), _fmt(p.x), _fmt(p.y), _fmt(p.detP),
             _fmt(p.detImM), _fmt(p.mult_near_minus1)]
            for p in bt.points]
    _emit(args, fam,
          ["step", "x", "y", "detP", "detImM",
           "nearest_multiplier_to_minus1"],
          rows, f"boundary trace of {word} index {args.index}")
    return 0


def cmd_nearby(args):
    fam = get_family(args.family)
    fam, spec, res, data = _solve_shrink(fam, args)
    ks = [int(s) for s in args.k.split(",")]
    sides = args.side.split(",") if args.side else ["plus", "minus"]
    chis = ([int(s) for s in args.chi.split(",")] if args.chi
            else list(range(-args.chi_max, args.chi_max + 1)))
    names = fam.slice_params
    rows = []
    for side in sides:
        for chi in chis:
            for k in ks:
                if abs(chi) >= k:
                    continue
                nb = predict_mod.find_nearby(data, res.jacobian, side, chi, k)
                rows.append([
                    nb.side, str(nb.chi), str(nb.k),
                    "1" if nb.found else "0",
                    _fmt(nb.xi[names[0]]), _fmt(nb.xi[names[1]]),
                    _fmt(nb.eta), _fmt(nb.nu),
                    "1" if nb.sgn_a_match else "0",
                    _fmt(nb.det_jtilde), _fmt(nb.max_other_multiplier),
                ])
    _emit(args, fam,
          ["side", "chi", "k", "found", "xi1", "xi2", "eta", "nu",
           "sgn_a_match", "detJtilde", "max_other_multiplier"],
          rows, f"nearby shrinking points of F[{spec.ell},{spec.m},{spec.n}]")
    return 0


def cmd_verify(args):
    fam = get_family(args.family)
    if args.what == "cycle":
        base = _base_point(fam, args)
        if args.at:
            vals = _parse_pair(args.at, "--at")
            base = base.with_values(**dict(zip(fam.slice_params, vals)))
        word = (Word(args.word) if args.word
                else build_rotational(_parse_spec(args.spec)))
        sol = solve_cycle(fam, base, word)
        w = sys.stdout.write
        w(f"cycle {word} for family {fam.name}\n")
        w(f"  admissible = {sol.admissible}  margin = {_fmt(sol.margin)}\n")
        w(f"  stable = {sol.stable}\n")
        w(f"  det(I - M) = {_fmt(sol.det_ImM)}\n")
        w("  multipliers: " + ", ".join(
            _fmt(m.real) + ("%+gj" % m.imag if abs(m.imag) > 1e-14 else "")
            for m in sol.multipliers) + "\n")
        for i, s in enumerate(sol.s):
            w(f"  s_{i} = {_fmt(s)}\n")
        resid = s_formula_residual(fam, base, sol)
        w(f"  s-formula residual = {resid:.3e}\n")
        return 0
    # identity suite at a solved shrinking point
    fam, spec, res, data = _solve_shrink(fam, args)
    report = verify_shrink(data)
    passed = sum(1 for v in report.values() if v <= IDENTITY_TOL)
    failed = len(report) - passed
    for name, resid in report.items():
        status = "pass" if resid <= IDENTITY_TOL else "FAIL"
        print(f"{status}  {name} ({resid:.2e})")
    print(f"{passed} passed, {failed} failed")
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------


def _add_common(p, slice_opts=True):
    p.add_argument("--family", default="bcnf3",
                   help="bcnf3 | ns2 | gs2 | file:PATH")
    p.add_argument("--fixed", action="append",
                   help="name=value[,name=value...] parameter bindings")
    if slice_opts:
        p.add_argument("--slice", help="two parameter names, comma separated")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "pretty"), default="csv")


def _add_shrink_opts(p):
    p.add_argument("--spec", required=True, help="ell,m,n")
    p.add_argument("--guess", required=True, help="two slice values")


_NEG_NUM = re.compile(r"^-\d+(\.\d*)?([eE][-+]?\d+)?([,:].*)?$")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="modelock",
        description="periodic solutions, mode-locking regions and "
                    "shrinking points of piecewise-linear continuous maps "
                    "(note: unary minus binds looser than ^, so -2^2 = -4)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="classify a parameter-plane grid")
    _add_common(p)
    p.add_argument("--x-range", required=True, help="lo,hi")
    p.add_argument("--y-range", required=True, help="lo,hi")
    p.add_argument("--grid", default="128,32", help="nx,ny")
    p.add_argument("--n-max", type=int, default=50)
    p.add_argument("--tie-break", choices=scan_mod.TIE_BREAKS,
                   default="highest-period")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("shrink", help="solve for a shrinking point")
    _add_common(p)
    _add_shrink_opts(p)
    p.add_argument("--csv", help="write a machine-readable record here")
    p.set_defaults(func=cmd_shrink)

    p = sub.add_parser("predict", help="leading-order nearby-region table")
    _add_common(p)
    _add_shrink_opts(p)
    p.add_argument("--chi-max", type=int, default=2)
    p.add_argument("--k", default="5,10,20,40", help="comma separated list")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("trace", help="trace a cycle boundary curve")
    _add_common(p)
    p.add_argument("--word", help="explicit word over {L,R}")
    p.add_argument("--spec", help="ell,m,n (alternative to --word)")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--start", required=True, help="x,y seed")
    p.add_argument("--x-range", required=True, help="window lo,hi")
    p.add_argument("--y-range", required=True, help="window lo,hi")
    p.add_argument("--max-steps", type=int, default=20000)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("nearby", help="solve nearby shrinking points")
    _add_common(p)
    _add_shrink_opts(p)
    p.add_argument("--side", help="plus,minus (default both)")
    p.add_argument("--chi", help="comma separated list")
    p.add_argument("--chi-max", type=int, default=2)
    p.add_argument("--k", default="5,10,20,40")
    p.set_defaults(func=cmd_nearby)

    p = sub.add_parser("verify", help="identity suite / cycle report")
    p.add_argument("what", nargs="?", choices=("shrink", "cycle"),
                   default="shrink")
    _add_common(p)
    p.add_argument("--spec", default="2,2,5", help="ell,m,n")
    p.add_argument("--guess", default="-1.9,0.22")
    p.add_argument("--word", help="explicit word (cycle mode)")
    p.add_argument("--at", help="slice values for cycle mode")
    p.set_defaults(func=cmd_verify)
    # let option values like "-1.9,0.22" parse without requiring the
    # --flag=value form; none of our option names start with a digit
    for parser in [ap] + list(sub.choices.values()):
        parser._negative_number_matcher = _NEG_NUM
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except (MapError, CycleError, shrink_mod.ShrinkError, TraceError,
            ValueError, np.linalg.LinAlgError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
