"""chainfigs render --kind ... --input ... --output ... [--overlay name ...]"""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .render import KINDS, FigureSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="chainfigs")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure from one CSV")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--overlay", action="append", default=[], dest="overlays")
    p.add_argument("--column", default="energy", help="value column for histograms")
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--saturate", type=float, default=0.05)
    args = parser.parse_args(argv)

    spec = FigureSpec(
        input=args.input,
        kind=args.kind,
        output=args.output,
        overlays=args.overlays,
        column=args.column,
        bins=args.bins,
        saturate=args.saturate,
    )
    try:
        out = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
