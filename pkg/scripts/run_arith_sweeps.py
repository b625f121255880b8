"""Error growth under repeated arithmetic at a fixed representation size.

Writes results/arith_<op>.csv for add and mul: five laws, k = 1..6 operands,
rep size 64, methods mean/median/asympt.  Each row's error is measured
against the reference pushforward (closed form where one exists, otherwise a
high-resolution product grid).
"""

from __future__ import annotations

import pathlib
import sys

from dcquant.cli import main

RESULTS = pathlib.Path(__file__).resolve().parent.parent / "results"


def run() -> int:
    RESULTS.mkdir(exist_ok=True)
    for op in ("add", "mul"):
        out = RESULTS / f"arith_{op}.csv"
        code = main(
            [
                "sweep-arith",
                "--op", op,
                "--k", "6",
                "--rep-size", "64",
                "--seed", "20260816",
                "--out", str(out),
            ]
        )
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run())
