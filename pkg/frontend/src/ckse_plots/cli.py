"""ckse-plot: render solver outputs.

    ckse-plot field <snapshot.bin> <out.png>
    ckse-plot rates <errors.csv> <out.png> [--slopes 1,2]
"""

from __future__ import annotations

import argparse
import sys

from .render import plot_field, plot_rates


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ckse-plot", description=__doc__)
    sub = parser.add_subparsers(dest="mode", required=True)

    p_field = sub.add_parser("field", help="magnitude heatmap of a snapshot")
    p_field.add_argument("snapshot")
    p_field.add_argument("output")

    p_rates = sub.add_parser("rates", help="log-log error chart from an error CSV")
    p_rates.add_argument("csv")
    p_rates.add_argument("output")
    p_rates.add_argument("--slopes", default="", help="comma-separated guide slopes, e.g. 1,2")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.mode == "field":
            out = plot_field(args.snapshot, args.output)
        else:
            slopes = tuple(float(tok) for tok in args.slopes.split(",") if tok.strip())
            out = plot_rates(args.csv, args.output, slopes)
    except (ValueError, FileNotFoundError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
