"""Command-line experiment harness.

Subcommands:
  quantize       one distribution, one method, one depth -> atoms CSV + JSON sidecar
  sweep-repsize  W1 error vs representation size across a grid of cells
  sweep-arith    W1 error vs operation count under fixed-size recompression
  mc-compare     deterministic quantizers priced in Monte Carlo samples
  bounds         envelope and Zador bounds without the measured error

All outputs are UTF-8 CSVs with a header row, '.' decimal separator, no
thousands separators, and 17 significant digits.  A rerun with the same config
and seed is byte-identical except for the wall_seconds column.  Cells run in a
thread pool; rows are buffered and written in config order, so the pool size
never affects output.

Config files are TOML whose keys mirror the long flags; explicit flags win over
config values.  Exit codes: 0 success, 2 config error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .arith import ArithOp, convolve, fold, reference_pushforward
from .errors import DcquantError, DivergentHalfDensity, PushforwardTooLarge
from .measures import (
    Bimodal,
    DiscreteMeasure,
    Distribution,
    Exponential,
    Gamma,
    Gaussian,
    HeavyTailed,
    Pareto,
    Uniform,
    counter_uniforms,
    derive_seed,
)
from .metrics import w1_continuous_discrete, w1_discrete
from .montecarlo import asymptotic_constant, mc_report
from .quantizer import quantize, quantize_discrete
from .reference import (
    asympt_compress_discrete,
    asymptotically_optimal_quantizer,
    envelope_bound,
    optimal_quantizer,
    zador_constant,
)
from .splitrules import SplitRule

__all__ = ["main", "parse_dist", "parse_target", "ExperimentConfig"]

# Table of laws used by the default sweeps (uniform joins only on request:
# its curves are exact straight lines and add nothing to the figures).
DEFAULT_DISTS = ["gaussian:0,1", "exp:1", "pareto:2,1", "heavytailed", "bimodal"]
SPLIT_METHODS = ("mean", "median", "geomean")
ALL_METHODS = SPLIT_METHODS + ("optimal", "asympt")
REFERENCE_DEPTH_MARGIN = 4
FALLBACK_GRID_CAP = 12


class ConfigError(ValueError):
    """Bad flags, bad config file, or an invalid experiment grid."""


def _dist_f(spec: str, want: int, name: str) -> list[float]:
    head, _, tail = spec.partition(":")
    parts = [p for p in tail.split(",") if p] if tail else []
    if len(parts) != want:
        raise ConfigError(f"{name} takes {want} parameter(s), got {spec!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"non-numeric parameter in {spec!r}") from None


def parse_dist(spec: str) -> Distribution:
    """Build a distribution from a name:params spec string."""
    spec = spec.strip()
    name = spec.partition(":")[0].strip().lower()
    try:
        if name in ("gaussian", "normal", "gauss"):
            mu, sigma = _dist_f(spec, 2, "gaussian")
            return Gaussian(mu, sigma)
        if name in ("exp", "exponential"):
            (rate,) = _dist_f(spec, 1, "exp")
            return Exponential(rate)
        if name == "pareto":
            alpha, x_m = _dist_f(spec, 2, "pareto")
            return Pareto(alpha, x_m)
        if name in ("heavytailed", "heavy-tailed", "heavy"):
            if ":" in spec:
                raise ConfigError("heavytailed takes no parameters")
            return HeavyTailed()
        if name == "bimodal":
            if ":" in spec:
                raise ConfigError("bimodal takes no parameters")
            return Bimodal()
        if name == "uniform":
            a, b = _dist_f(spec, 2, "uniform")
            return Uniform(a, b)
        if name == "gamma":
            shape, rate = _dist_f(spec, 2, "gamma")
            return Gamma(shape, rate)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid parameters in {spec!r}: {exc}") from None
    raise ConfigError(
        f"unknown distribution {spec!r}; known: gaussian, exp, pareto, heavytailed, bimodal, uniform, gamma"
    )


@dataclass(frozen=True)
class Target:
    """A distribution, optionally combined with itself k times under op."""

    dist: Distribution
    op: ArithOp | None = None
    k: int = 1

    @property
    def label(self) -> str:
        if self.op is None:
            return self.dist.label
        return f"{self.dist.label}^{self.op.value}{self.k}"


def parse_target(spec: str) -> Target:
    """Parse `dist` or `dist^opK` (e.g. gaussian:0,1^mul4)."""
    base, caret, suffix = spec.partition("^")
    if not caret:
        return Target(parse_dist(base))
    op_name = suffix.rstrip("0123456789")
    digits = suffix[len(op_name) :]
    if not digits:
        raise ConfigError(f"derived target {spec!r} needs a count, e.g. ^mul4")
    try:
        op = ArithOp.from_name(op_name)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    k = int(digits)
    if k < 2:
        raise ConfigError(f"derived target {spec!r} needs k >= 2")
    return Target(parse_dist(base), op, k)


@dataclass
class ExperimentConfig:
    dists: list[str] = field(default_factory=list)
    methods: list[str] = field(default_factory=list)
    depths: list[int] = field(default_factory=list)
    op: str = "add"
    k: int = 6
    rep_size: int | None = None
    seed: int = 0
    out: str | None = None
    workers: int | None = None
    replicates: int = 8
    methods_explicit: bool = False


# config-file keys accepted per subcommand; anything else is a typo
_CONFIG_KEYS = {"dist", "method", "n", "op", "k", "rep_size", "seed", "out", "workers", "replicates"}


def _as_list(value, what: str) -> list:
    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, (str, int, float)):
        return [value]
    raise ConfigError(f"bad {what} value {value!r}")


def _parse_depths(tokens: Sequence) -> list[int]:
    out: list[int] = []
    for tok in tokens:
        for piece in str(tok).split(","):
            piece = piece.strip()
            if not piece:
                continue
            if ".." in piece:
                a, _, b = piece.partition("..")
                try:
                    lo, hi = int(a), int(b)
                except ValueError:
                    raise ConfigError(f"bad depth range {piece!r}") from None
                if hi < lo:
                    raise ConfigError(f"empty depth range {piece!r}")
                out.extend(range(lo, hi + 1))
            else:
                try:
                    out.append(int(piece))
                except ValueError:
                    raise ConfigError(f"bad depth {piece!r}") from None
    for n in out:
        if n < 0:
            raise ConfigError(f"depth must be nonnegative, got {n}")
    return out


def _load_config_file(path: str) -> dict:
    try:
        import tomllib  # py311+
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"bad TOML in {path}: {exc}") from None
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    return data


def _merge_config(
    args: argparse.Namespace,
    *,
    default_methods: list[str],
    default_dists: list[str] | None = None,
) -> ExperimentConfig:
    """Resolve flags > config file > defaults into one config."""
    file_cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}

    def pick(flag_name: str, file_key: str, default):
        flag = getattr(args, flag_name, None)
        if flag is not None:
            return flag
        if file_key in file_cfg:
            return file_cfg[file_key]
        return default

    dists_raw = pick("dist", "dist", None)
    methods_raw = pick("method", "method", None)
    depths_raw = pick("n", "n", None)

    cfg = ExperimentConfig()
    if dists_raw is not None:
        cfg.dists = [str(d) for d in _as_list(dists_raw, "dist")]
    else:
        cfg.dists = list(default_dists if default_dists is not None else DEFAULT_DISTS)
    if methods_raw is not None:
        cfg.methods_explicit = True
        methods = []
        for tok in _as_list(methods_raw, "method"):
            methods.extend(p.strip().lower() for p in str(tok).split(",") if p.strip())
        cfg.methods = methods
    else:
        cfg.methods = list(default_methods)
    cfg.depths = _parse_depths(_as_list(depths_raw, "n")) if depths_raw is not None else []
    cfg.op = str(pick("op", "op", "add")).lower()
    cfg.k = int(pick("k", "k", 6))
    rep = pick("rep_size", "rep_size", None)
    cfg.rep_size = int(rep) if rep is not None else None
    cfg.seed = int(pick("seed", "seed", 0))
    out = pick("out", "out", None)
    cfg.out = str(out) if out is not None else None
    workers = pick("workers", "workers", None)
    cfg.workers = int(workers) if workers is not None else None
    cfg.replicates = int(pick("replicates", "replicates", 8))

    for m in cfg.methods:
        if m not in ALL_METHODS:
            raise ConfigError(f"unknown method {m!r}; known: {', '.join(ALL_METHODS)}")
    if not cfg.dists:
        raise ConfigError("no distributions selected")
    if not cfg.methods:
        raise ConfigError("no methods selected")
    if cfg.k < 1:
        raise ConfigError("k must be >= 1")
    if cfg.replicates < 1:
        raise ConfigError("replicates must be >= 1")
    return cfg


def _depth_and_size(cfg: ExperimentConfig, method: str, default_depths: list[int]) -> list[tuple[int | None, int]]:
    """(n, rep_size) pairs for one method; split rules need rep_size = 2^n.

    n is None for a rep_size that is not a power of two (allowed for the
    optimal/asympt methods, whose size is free).
    """
    if cfg.rep_size is not None:
        size = cfg.rep_size
        if size < 1:
            raise ConfigError("rep_size must be >= 1")
        n = size.bit_length() - 1
        if (1 << n) == size:
            return [(n, size)]
        if method in SPLIT_METHODS:
            raise ConfigError(f"rep_size {size} is not a power of two (required for {method})")
        return [(None, size)]
    depths = cfg.depths if cfg.depths else default_depths
    return [(n, 1 << n) for n in depths]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return "nan"
    return f"{v:.17g}"


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _run_pool(cells: list, runner: Callable, workers: int | None) -> list:
    if workers is None:
        workers = min(8, os.cpu_count() or 1)
    if workers <= 1 or len(cells) <= 1:
        return [runner(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(runner, cells))


def _method_measure(d: Distribution, method: str, n: int, size: int) -> DiscreteMeasure:
    if method in SPLIT_METHODS:
        return quantize(d, SplitRule.from_name(method), n)
    if method == "optimal":
        return optimal_quantizer(d, size)
    return asymptotically_optimal_quantizer(d, size)


def _bound_columns(d: Distribution, method: str, n: int, size: int):
    """(zador_lower, split_upper, tail_lower), None where undefined."""
    try:
        zador = zador_constant(d) / size
    except DivergentHalfDensity:
        zador = None
    upper = lower = None
    if method in ("mean", "median"):
        try:
            report = envelope_bound(d, SplitRule.from_name(method), n)
            upper, lower = report.split_upper, report.tail_lower
        except DcquantError:
            pass
    return zador, upper, lower


# ---------------------------------------------------------------- quantize

def cmd_quantize(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, default_methods=["mean"])
    if len(cfg.dists) != 1 or len(cfg.methods) != 1:
        raise ConfigError("quantize takes exactly one --dist and one --method")
    d = parse_dist(cfg.dists[0])
    method = cfg.methods[0]
    pairs = _depth_and_size(cfg, method, default_depths=[6])
    if len(pairs) != 1:
        raise ConfigError("quantize takes exactly one --n")
    n, size = pairs[0]
    out = cfg.out or "atoms.csv"

    m = _method_measure(d, method, n, size)
    w1 = w1_continuous_discrete(d, m)
    zador, upper, lower = _bound_columns(d, method, n, size)

    _write_csv(out, ["position", "weight"], [[p, w] for p, w in zip(m.positions, m.weights)])
    sidecar = os.path.splitext(out)[0] + ".json"
    payload = {
        "distribution": d.label,
        "method": method,
        "n": n,
        "rep_size": size,
        "n_atoms": m.n_atoms,
        "mean": float(m.mean()),
        "w1": float(w1),
        "zador_lower": zador,
        "split_upper": upper,
        "tail_lower": lower,
    }
    with open(sidecar, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {out} ({m.n_atoms} atoms) and {sidecar}")
    return 0


# ------------------------------------------------------------ sweep-repsize

REPSIZE_HEADER = [
    "distribution", "method", "n", "rep_size",
    "w1", "zador_lower", "split_upper", "tail_lower", "wall_seconds", "error",
]


def _repsize_cells(cfg: ExperimentConfig, default_depths: list[int]) -> list[tuple[str, str, int, int]]:
    cells = []
    for spec in cfg.dists:
        d = parse_dist(spec)  # fail fast on bad specs
        for method in cfg.methods:
            # the half-density integral diverges for the heavy-tailed law, so
            # the asympt column is omitted unless methods were given explicitly
            if method == "asympt" and isinstance(d, HeavyTailed) and not cfg.methods_explicit:
                continue
            for n, size in _depth_and_size(cfg, method, default_depths):
                cells.append((spec, method, n, size))
    return cells


def _run_repsize_cell(cell: tuple[str, str, int, int]) -> list:
    spec, method, n, size = cell
    d = parse_dist(spec)
    start = time.perf_counter()
    try:
        m = _method_measure(d, method, n, size)
        w1 = w1_continuous_discrete(d, m)
    except DcquantError as exc:
        wall = time.perf_counter() - start
        return [spec, method, n, size, None, None, None, None, wall, f"{type(exc).__name__}: {exc}"]
    zador, upper, lower = _bound_columns(d, method, n, size)
    wall = time.perf_counter() - start
    return [spec, method, n, size, w1, zador, upper, lower, wall, ""]


def cmd_sweep_repsize(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, default_methods=["mean", "median", "optimal", "asympt"])
    cells = _repsize_cells(cfg, default_depths=list(range(0, 9)))
    rows = _run_pool(cells, _run_repsize_cell, cfg.workers)
    out = cfg.out or "repsize.csv"
    _write_csv(out, REPSIZE_HEADER, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


# -------------------------------------------------------------- sweep-arith

ARITH_HEADER = ["distribution", "method", "op", "k", "w1_vs_reference", "reference_kind", "error"]


def _arith_compress(m: DiscreteMeasure, method: str, n: int, size: int) -> DiscreteMeasure:
    if method in SPLIT_METHODS:
        return quantize_discrete(m, SplitRule.from_name(method), n)
    return asympt_compress_discrete(m, size)


def _fold_with_method(d: Distribution, method: str, op: ArithOp, k: int, n: int, size: int) -> DiscreteMeasure:
    operand = _method_measure(d, method, n, size)
    acc = operand
    for _ in range(k - 1):
        acc = _arith_compress(convolve(acc, operand, op), method, n, size)
    return acc


def _reference_for(d: Distribution, op: ArithOp, k: int, size: int):
    """(reference, kind): closed form, raw product grid, or a fine fold."""
    if k == 1:
        return d, "closed_form"
    grid_n = max(size - 1, 0).bit_length() + REFERENCE_DEPTH_MARGIN
    try:
        ref = reference_pushforward([d] * k, op, grid_n)
    except PushforwardTooLarge:
        cap = min(grid_n, FALLBACK_GRID_CAP)
        parts = [quantize(d, SplitRule.MEAN, cap)] * k
        return fold(parts, op, SplitRule.MEAN, cap), "compressed_fold"
    if isinstance(ref, Distribution):
        return ref, "closed_form"
    return ref, "product_grid"


def _w1_vs(ref, m: DiscreteMeasure) -> float:
    if isinstance(ref, Distribution):
        return w1_continuous_discrete(ref, m)
    return w1_discrete(m, ref)


def _run_arith_cell(cell: tuple[str, str, str, int, int, int]) -> list:
    spec, method, op_name, k, n, size = cell
    d = parse_dist(spec)
    op = ArithOp.from_name(op_name)
    try:
        acc = _fold_with_method(d, method, op, k, n, size)
        ref, kind = _reference_for(d, op, k, size)
        w1 = _w1_vs(ref, acc)
    except DcquantError as exc:
        return [spec, method, op_name, k, None, "", f"{type(exc).__name__}: {exc}"]
    return [spec, method, op_name, k, w1, kind, ""]


def cmd_sweep_arith(args: argparse.Namespace) -> int:
    # the stationarity solve is too slow to rerun inside every fold step, so
    # the optimal method stays out unless requested explicitly
    cfg = _merge_config(args, default_methods=["mean", "median", "asympt"])
    try:
        op = ArithOp.from_name(cfg.op)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    cells = []
    for spec in cfg.dists:
        d = parse_dist(spec)
        for method in cfg.methods:
            if method == "asympt" and isinstance(d, HeavyTailed) and not cfg.methods_explicit:
                continue
            pairs = _depth_and_size(cfg, method, default_depths=[6])
            if len(pairs) != 1:
                raise ConfigError("sweep-arith takes a single depth (--n or --rep-size)")
            n, size = pairs[0]
            for k in range(1, cfg.k + 1):
                cells.append((spec, method, op.value, k, n, size))

    rows = _run_pool(cells, _run_arith_cell, cfg.workers)
    out = cfg.out or "arith.csv"
    _write_csv(out, ARITH_HEADER, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


# --------------------------------------------------------------- mc-compare

MC_HEADER = [
    "distribution", "target_method", "target_n", "target_w1",
    "asymptotic_constant", "equivalent_mc_count", "measured_mc_mean_w1", "error",
]


def _step_cdf_constant(m: DiscreteMeasure) -> float:
    """sqrt(2/pi) * integral of sqrt(F(1-F)) for a step CDF."""
    f = m.cum_weights[:-1]
    gaps = np.diff(m.positions)
    return math.sqrt(2.0 / math.pi) * float(np.sum(np.sqrt(np.clip(f * (1.0 - f), 0.0, 0.25)) * gaps))


def _mc_sample_target(target: Target, count: int, seed: int) -> DiscreteMeasure:
    if target.op is None:
        x = target.dist.sample(counter_uniforms(count, seed))
    else:
        acc = None
        for j in range(target.k):
            draw = target.dist.sample(counter_uniforms(count, derive_seed(seed, j)))
            if acc is None:
                acc = draw
            elif target.op is ArithOp.ADD:
                acc = acc + draw
            elif target.op is ArithOp.SUB:
                acc = acc - draw
            else:
                acc = acc * draw
        x = acc
    x = np.sort(x)
    return DiscreteMeasure.from_atoms(x, np.full(count, 1.0 / count))


def _run_mc_cell(cell: tuple[str, str, int, int, int, int]) -> list:
    spec, method, n, size, seed, replicates = cell
    target = parse_target(spec)
    d = target.dist
    try:
        if target.op is None:
            m = _method_measure(d, method, n, size)
            target_w1 = w1_continuous_discrete(d, m)
            ref = d
        else:
            op = target.op
            acc = _fold_with_method(d, method, op, target.k, n, size)
            ref, _ = _reference_for(d, op, target.k, size)
            target_w1 = _w1_vs(ref, acc)
        if isinstance(ref, Distribution):
            constant = asymptotic_constant(ref)
        else:
            constant = _step_cdf_constant(ref)
        count = math.ceil((constant / target_w1) ** 2)
        if target.op is None:
            measured = mc_report(d, count, replicates, seed).mean_w1
        else:
            vals = [
                _w1_vs(ref, _mc_sample_target(target, count, derive_seed(seed, r)))
                for r in range(replicates)
            ]
            measured = math.fsum(vals) / replicates
    except DcquantError as exc:
        return [target.label, method, n, None, None, None, None, f"{type(exc).__name__}: {exc}"]
    return [target.label, method, n, target_w1, constant, count, measured, ""]


def cmd_mc_compare(args: argparse.Namespace) -> int:
    # default targets are the laws whose MC constant is finite
    cfg = _merge_config(args, default_methods=["mean"], default_dists=["exp:1", "gaussian:0,1"])
    if len(cfg.methods) != 1:
        raise ConfigError("mc-compare takes exactly one --method")
    method = cfg.methods[0]
    if method not in SPLIT_METHODS:
        raise ConfigError("mc-compare target method must be a split rule")

    cells = []
    for spec in cfg.dists:
        parse_target(spec)  # fail fast
        pairs = _depth_and_size(cfg, method, default_depths=[8])
        for n, size in pairs:
            cells.append((spec, method, n, size, cfg.seed, cfg.replicates))

    rows = _run_pool(cells, _run_mc_cell, cfg.workers)
    out = cfg.out or "mc_compare.csv"
    _write_csv(out, MC_HEADER, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


# ------------------------------------------------------------------- bounds

BOUNDS_HEADER = ["distribution", "method", "n", "rep_size", "zador_lower", "split_upper", "tail_lower", "error"]


def _run_bounds_cell(cell: tuple[str, str, int, int]) -> list:
    spec, method, n, size = cell
    d = parse_dist(spec)
    try:
        zador, upper, lower = _bound_columns(d, method, n, size)
    except DcquantError as exc:
        return [spec, method, n, size, None, None, None, f"{type(exc).__name__}: {exc}"]
    return [spec, method, n, size, zador, upper, lower, ""]


def cmd_bounds(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, default_methods=["mean", "median"])
    for method in cfg.methods:
        if method not in SPLIT_METHODS:
            raise ConfigError("bounds are defined for split rules only")
    cells = []
    for spec in cfg.dists:
        parse_dist(spec)
        for method in cfg.methods:
            for n, size in _depth_and_size(cfg, method, default_depths=list(range(0, 11))):
                cells.append((spec, method, n, size))
    rows = _run_pool(cells, _run_bounds_cell, cfg.workers)
    out = cfg.out or "bounds.csv"
    _write_csv(out, BOUNDS_HEADER, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


# ------------------------------------------------------------------- parser

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--dist", action="append", help="distribution spec name:params (repeatable)")
    sub.add_argument("--method", action="append", help="mean | median | geomean | optimal | asympt (repeatable)")
    sub.add_argument("--n", action="append", help="depth, list (0,2,4) or range (0..10)")
    sub.add_argument("--rep-size", dest="rep_size", type=int, help="representation size (2^n for split rules)")
    sub.add_argument("--op", choices=[o.value for o in ArithOp], help="arithmetic operation")
    sub.add_argument("--k", type=int, help="number of operands in a fold")
    sub.add_argument("--seed", type=int, help="base seed for sampled columns")
    sub.add_argument("--out", help="output CSV path")
    sub.add_argument("--config", help="TOML config file (flags win)")
    sub.add_argument("--workers", type=int, help="thread pool size (output order is unaffected)")
    sub.add_argument("--replicates", type=int, help="Monte Carlo replicates per cell")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcquant",
        description="Quantize distributions, sweep errors and bounds, and price them in Monte Carlo samples.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name, fn in [
        ("quantize", cmd_quantize),
        ("sweep-repsize", cmd_sweep_repsize),
        ("sweep-arith", cmd_sweep_arith),
        ("mc-compare", cmd_mc_compare),
        ("bounds", cmd_bounds),
    ]:
        sub = subs.add_parser(name)
        _add_common(sub)
        sub.set_defaults(fn=fn)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches the config-error code
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DcquantError as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
