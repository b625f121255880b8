"""Bound tables: Zador lower, split-rule upper, and tail lower envelopes.

Writes results/bounds.csv over the five default laws plus uniform, mean and
median rules, depths 0..10.  Laws without a finite envelope (two-sided
support) get empty envelope columns; the Zador column is filled whenever the
half-density integral converges.
"""

from __future__ import annotations

import pathlib
import sys

from dcquant.cli import DEFAULT_DISTS, main

RESULTS = pathlib.Path(__file__).resolve().parent.parent / "results"


def run() -> int:
    RESULTS.mkdir(exist_ok=True)
    out = RESULTS / "bounds.csv"
    dist_flags = []
    for spec in [*DEFAULT_DISTS, "uniform:0,1"]:
        dist_flags += ["--dist", spec]
    code = main(["bounds", *dist_flags, "--method", "mean,median", "--n", "0..10", "--out", str(out)])
    if code == 0:
    return code


if __name__ == "__main__":
    sys.exit(run())
