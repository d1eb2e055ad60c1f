"""plot <fig1|fig2|fig3> --in <csv> --out <png>

Exit codes: 0 on success, 2 on schema mismatch or unreadable input.
"""
from __future__ import annotations

import argparse
import sys

from .render import PlotJob, SchemaError, render

__all__ = ["main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plot", description=__doc__)
    parser.add_argument("kind", choices=("fig1", "fig2", "fig3"))
    parser.add_argument("--in", dest="input_path", required=True, help="experiment CSV")
    parser.add_argument("--out", dest="output_path", required=True, help="image file to write")
    parser.add_argument("--title")
    parser.add_argument("--xlabel")
    parser.add_argument("--ylabel")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = PlotJob(
        kind=args.kind,
        input_path=args.input_path,
        output_path=args.output_path,
        title=args.title,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
    )
    try:
        out = render(job)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
