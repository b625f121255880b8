"""Render sweep CSVs into figures: error vs rep size and error vs operand count.

Everything here is read-only over the CSVs and deterministic: fixed method
order and styles, no embedded timestamps, so rerendering a figure yields the
same bytes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
# marker ids in SVG output are content hashes salted with this; without a
# fixed salt they change per process and rerenders stop being byte-identical
matplotlib.rcParams["svg.hashsalt"] = "plotgen"

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

KINDS = ("repsize", "repsize-loglog", "arith")

# stable per-method styling so reruns and adjacent figures match
METHOD_STYLE = {
    "mean": dict(color="#1f77b4", marker="o"),
    "median": dict(color="#ff7f0e", marker="s"),
    "geomean": dict(color="#2ca02c", marker="^"),
    "optimal": dict(color="#d62728", marker="d"),
    "asympt": dict(color="#9467bd", marker="v"),
}
METHOD_ORDER = list(METHOD_STYLE)

REPSIZE_COLUMNS = ("distribution", "method", "rep_size", "w1", "zador_lower")
ARITH_COLUMNS = ("distribution", "method", "op", "k", "w1_vs_reference")

OP_XLABEL = {
    "add": "number of additions",
    "sub": "number of subtractions",
    "mul": "number of multiplications",
}


class PlotgenError(Exception):
    """Base for rendering failures."""


class MissingColumn(PlotgenError):
    """The CSV lacks a column the figure kind needs."""


class EmptySelection(PlotgenError):
    """The distribution filter matched no usable rows."""


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    kind: str
    dist: str
    out_path: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PlotgenError(f"unknown figure kind {self.kind!r}; known: {', '.join(KINDS)}")


def load_rows(csv_path: str) -> list[dict]:
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise PlotgenError(f"{csv_path}: empty CSV")
        return list(reader)


def require_columns(rows: list[dict], needed: tuple[str, ...], csv_path: str) -> None:
    have = set(rows[0]) if rows else set()
    missing = [c for c in needed if c not in have]
    if missing:
        raise MissingColumn(f"{csv_path}: missing column(s) {', '.join(missing)}")


def fitted_slope(x, y, base: float = 2.0) -> float:
    """Least-squares slope of log_base(y) against log_base(x)."""
    lx = np.log(np.asarray(x, dtype=float)) / math.log(base)
    ly = np.log(np.asarray(y, dtype=float)) / math.log(base)
    return float(np.polyfit(lx, ly, 1)[0])


def _select(rows: list[dict], dist: str) -> list[dict]:
    picked = [r for r in rows if r["distribution"] == dist and not r.get("error")]
    if not picked:
        raise EmptySelection(f"no rows for distribution {dist!r}")
    return picked


def _methods_present(rows: list[dict]) -> list[str]:
    present = {r["method"] for r in rows}
    ordered = [m for m in METHOD_ORDER if m in present]
    return ordered + sorted(present - set(ordered))


def _series(rows: list[dict], xcol: str, ycol: str) -> tuple[np.ndarray, np.ndarray]:
    pairs = sorted((float(r[xcol]), float(r[ycol])) for r in rows if r[ycol] != "")
    xs = np.array([p[0] for p in pairs])
    ys = np.array([p[1] for p in pairs])
    return xs, ys


def _render_repsize(ax, rows: list[dict], loglog: bool) -> None:
    for method in _methods_present(rows):
        xs, ys = _series([r for r in rows if r["method"] == method], "rep_size", "w1")
        if xs.size == 0:
            continue
        ax.plot(xs, ys, label=method, markersize=4, **METHOD_STYLE.get(method, {}))
    zs = {float(r["rep_size"]): float(r["zador_lower"]) for r in rows if r["zador_lower"] != ""}
    if zs:
        sizes = np.array(sorted(zs))
        ax.plot(sizes, [zs[s] for s in sizes], "k--", linewidth=1, label="Zador lower bound")
    if loglog:
        ax.set_xscale("log", base=2)
        ax.set_yscale("log", base=2)
    ax.set_xlabel("representation size")
    ax.set_ylabel("Wasserstein-1 error")


def _render_arith(ax, rows: list[dict]) -> None:
    for method in _methods_present(rows):
        xs, ys = _series([r for r in rows if r["method"] == method], "k", "w1_vs_reference")
        if xs.size == 0:
            continue
        ax.plot(xs, ys, label=method, markersize=4, **METHOD_STYLE.get(method, {}))
    ops = {r["op"] for r in rows}
    op = ops.pop() if len(ops) == 1 else None
    ax.set_xlabel(OP_XLABEL.get(op, "number of operations"))
    ax.set_ylabel("Wasserstein-1 error")


def render(spec: FigureSpec) -> None:
    """Render one (distribution, kind) figure; SVG output carries no timestamp."""
    rows = load_rows(spec.csv_path)
    needed = ARITH_COLUMNS if spec.kind == "arith" else REPSIZE_COLUMNS
    require_columns(rows, needed, spec.csv_path)
    picked = _select(rows, spec.dist)

    fig, ax = plt.subplots(figsize=(6.0, 4.0), constrained_layout=True)
    try:
        if spec.kind == "arith":
            _render_arith(ax, picked)
        else:
            _render_repsize(ax, picked, loglog=spec.kind == "repsize-loglog")
        ax.set_title(spec.dist)
        ax.legend()
        metadata = {"Date": None} if spec.out_path.endswith(".svg") else None
        fig.savefig(spec.out_path, metadata=metadata)
    finally:
        plt.close(fig)
