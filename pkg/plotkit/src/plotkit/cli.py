"""Command line frontend: plotkit INPUT.csv [INPUT2.csv ...] --out FIG.png."""

from __future__ import annotations

import argparse
import sys

from .io import PlotError
from .render import PlotSpec, render


def build_parser():
    ap = argparse.ArgumentParser(
        prog="plotkit",
        description="render scan/trace/prediction CSV files to images")
    ap.add_argument("inputs", nargs="+", help="input CSV file(s)")
    ap.add_argument("--out", required=True, help="output image path")
    ap.add_argument("--color-by", choices=("period", "rotnum"),
                    default="period")
    ap.add_argument("--overlay", action="append", default=[],
                    help="CSV whose (x, y) samples are drawn on top")
    ap.add_argument("--window", help="xlo,xhi,ylo,yhi view limits")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    window = None
    if args.window:
        try:
            xlo, xhi, ylo, yhi = (float(v) for v in args.window.split(","))
        except ValueError:
            print("error: --window expects xlo,xhi,ylo,yhi", file=sys.stderr)
            return 2
        window = ((xlo, xhi), (ylo, yhi))
    spec = PlotSpec(inputs=tuple(args.inputs), output=args.out,
                    color_by=args.color_by, overlays=tuple(args.overlay),
                    window=window)
    try:
        render(spec)
    except PlotError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
