"""Command line entry: one figure per invocation.

Exit codes: 0 rendered, 2 bad invocation or empty selection (no file
written), 3 unusable CSV (missing file or column).
"""

from __future__ import annotations

import argparse
import sys

from .figures import KINDS, EmptySelection, FigureSpec, MissingColumn, PlotgenError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="plotgen", description="Render dcquant sweep CSVs.")
    parser.add_argument("--csv", required=True, help="input CSV from a dcquant sweep")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--dist", required=True, help="distribution spec to select, e.g. exp:1")
    parser.add_argument("--out", required=True, help="output image path (.svg or .png)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    try:
        render(FigureSpec(args.csv, args.kind, args.dist, args.out))
    except EmptySelection as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MissingColumn, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PlotgenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
