"""Error-vs-representation-size sweeps, one CSV per law.

Writes results/repsize_<law>.csv for the five default laws plus uniform
(whose mean-split curve is the exact-rate reference line in the log-log
figure).  Depths 0..8 cover rep sizes 1..256; the optimal solver dominates
the wall time at the top sizes.
"""

from __future__ import annotations

import pathlib
import sys

from dcquant.cli import DEFAULT_DISTS, main

RESULTS = pathlib.Path(__file__).resolve().parent.parent / "results"


def slug(spec: str) -> str:
    return spec.replace(":", "_").replace(",", "_").replace("^", "_pow_")


def run() -> int:
    RESULTS.mkdir(exist_ok=True)
    for spec in [*DEFAULT_DISTS, "uniform:0,1"]:
        out = RESULTS / f"repsize_{slug(spec)}.csv"
        code = main(
            [
                "sweep-repsize",
                "--dist", spec,
                "--n", "0..8",
                "--seed", "20260816",
                "--out", str(out),
            ]
        )
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run())
