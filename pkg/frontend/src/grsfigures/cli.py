"""Command line entry point: render one figure from CSV input.

Exit codes: 0 success, 2 usage error, 3 schema mismatch (the message on
stderr includes the column diff), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .render import KINDS, FigureSpec, SchemaMismatch, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SCHEMA = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render an experiment CSV table to a figure.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--kind", required=True, choices=KINDS,
                        help="which figure the input represents")
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="PATH",
                        help="input CSV; repeat once to overlay a second file")
    parser.add_argument("--out", required=True,
                        help="output image path (format from extension)")
    parser.add_argument("--title", help="figure title override")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        spec = FigureSpec(args.kind, tuple(args.inputs), args.out, args.title)
        render(spec)
    except SchemaMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
