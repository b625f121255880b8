"""Baselines and analytic envelopes for judging quantization quality.

Three reference points:

* The optimal N-atom W1 quantizer, characterized by the stationarity system
  2 F(x_i) = F(m_i) + F(m_{i-1}) with m_i the midpoints (each atom is a median
  of its midpoint cell).  Solved by Newton with Lloyd-step safeguards.
* The asymptotically optimal quantizer: atoms at quantiles (2i-1)/(2N) of the
  normalized square-root-density law, weights from midpoint cells.  Valid when
  the integral of sqrt(density) converges plus mild tail regularity; the
  catalog flags laws where that is known to fail.
* Bounds: the Zador-style lower envelope c(mu)/2^n with
  c(mu) = (integral of sqrt(density))^2 / 4, and a two-sided envelope from
  iterating the split rule along upper tail cells, which sandwiches the actual
  error between the final tail term and a weighted sum of tail-cell widths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from ._quad import integrate_decaying, piece
from .errors import (
    DivergentHalfDensity,
    DivergentIntegral,
    NoConvergence,
    UnboundedBelow,
    UnsupportedRule,
)
from .measures import DiscreteMeasure, Distribution, merge_sorted_atoms
from .metrics import w1_via_cells
from .splitrules import SplitRule, split

__all__ = [
    "BoundReport",
    "zador_constant",
    "half_density_total",
    "envelope_bound",
    "asymptotically_optimal_quantizer",
    "asympt_compress_discrete",
    "optimal_quantizer",
    "stationarity_residual",
    "tail_rate_estimate",
]


def half_density_total(d: Distribution, rel_tol: float = 1e-9) -> float:
    """Integral of sqrt(pdf) over the support; DivergentHalfDensity if it does not settle."""
    lo, hi = d.support()
    try:
        return integrate_decaying(lambda t: math.sqrt(float(d.pdf(t))), lo, hi, rel_tol)
    except DivergentIntegral as exc:
        raise DivergentHalfDensity(str(exc)) from exc


def zador_constant(d: Distribution) -> float:
    """Constant c with optimal N-atom W1 error ~ c/(4N) scaling, i.e. (int sqrt f)^2 / 4."""
    total = half_density_total(d)
    return 0.25 * total * total


@dataclass(frozen=True)
class BoundReport:
    """Envelopes for the depth-n quantization error of one law under one rule.

    zador_lower is None when the square-root-density integral diverges.
    omegas holds the tail split sequence, omegas[0] being the support's lower
    end and omegas[j+1] the rule's point for the law restricted to
    [omegas[j], inf).
    """

    rule: SplitRule
    depth: int
    split_upper: float
    tail_lower: float
    zador_lower: float | None
    omegas: np.ndarray = field(repr=False)


def envelope_bound(d: Distribution, rule: SplitRule, n: int) -> BoundReport:
    """Two-sided error envelope from iterating the split along upper tails.

    Requires a support bounded below and a rule with a contraction factor
    (mean or median).  The lower bound is the one-point error of the last tail
    cell, which the recursion can never beat; the upper bound adds the
    geometrically discounted widths of the earlier tail cells.
    """
    if n < 0:
        raise ValueError(f"depth must be nonnegative, got {n}")
    c = rule.c_factor
    if c is None:
        raise UnsupportedRule(f"rule {rule.value!r} has no contraction factor; bound unavailable")
    lo, hi = d.support()
    if math.isinf(lo):
        raise UnboundedBelow(f"support starts at {lo}; the tail envelope needs a finite lower end")
    d.mean()  # needs a finite first moment

    omegas = np.empty(n + 2)
    omegas[0] = lo
    cur = lo
    for j in range(n + 1):
        cur = max(split(rule, d, (cur, hi)), cur)
        omegas[j + 1] = cur

    w_n, w_n1 = omegas[n + 1], omegas[n]
    widths = np.diff(omegas[: n + 1])
    masses = np.asarray(d.mass(omegas[:n], omegas[1 : n + 1]), dtype=np.float64)
    weights = 0.5 ** (n - 1 - np.arange(n))
    geometric_part = c * float(np.dot(widths * masses, weights)) if n > 0 else 0.0

    inner = w_n * float(d.mass(w_n1, w_n)) - float(d.partial_expectation(w_n1, w_n))
    outer = float(d.partial_expectation(w_n, hi)) - w_n * float(d.mass(w_n, hi))
    tail = max(inner, 0.0) + max(outer, 0.0)

    try:
        zador_lower = zador_constant(d) / 2.0**n
    except DivergentHalfDensity:
        zador_lower = None

    return BoundReport(
        rule=rule,
        depth=n,
        split_upper=geometric_part + tail,
        tail_lower=tail,
        zador_lower=zador_lower,
        omegas=omegas,
    )


# --- half-density (asymptotically optimal) quantizer ---------------------------


def _invert_integral(fn, x0: float, need: float, step0: float, deriv=None) -> float:
    """Smallest x > x0 with integral of fn over [x0, x] equal to need.

    Doubling bracket expansion, then a safeguarded Newton iteration whose
    residual is updated with short incremental quadrature panels.
    """
    # bracket [a, b] with the local target inside
    a, b = x0, x0
    acc = 0.0
    step = step0
    for _ in range(400):
        a, b = b, b + step
        inc = piece(fn, a, b)
        if acc + inc >= need:
            break
        acc += inc
        step *= 2.0
    else:
        raise NoConvergence(f"bracket expansion from {x0} never accumulated {need:g}")

    local = need - acc  # integral over [a, x]
    lo_b, hi_b = a, b
    x = a + (b - a) * min(max(local / inc, 0.0), 1.0) if inc > 0 else b
    g = piece(fn, a, x) - local
    for _ in range(80):
        if g < 0.0:
            lo_b = x
        else:
            hi_b = x
        slope = fn(x) if deriv is None else deriv(x)
        if slope > 0.0 and math.isfinite(slope):
            x_new = x - g / slope
        else:
            x_new = 0.5 * (lo_b + hi_b)
        if not (lo_b < x_new < hi_b):
            x_new = 0.5 * (lo_b + hi_b)
        if abs(x_new - x) <= 1e-13 * max(1.0, abs(x_new)):
            return x_new
        g = g + math.copysign(piece(fn, min(x, x_new), max(x, x_new)), x_new - x)
        x = x_new
    raise NoConvergence(f"integral inversion stalled near x = {x}")


def asymptotically_optimal_quantizer(d: Distribution, n_atoms: int) -> DiscreteMeasure:
    """Atoms at half-density quantiles (2i-1)/(2N), weights from midpoint cells."""
    if n_atoms < 1:
        raise ValueError(f"need at least one atom, got {n_atoms}")
    lo, hi = d.support()
    sqrt_pdf = lambda t: math.sqrt(max(float(d.pdf(t)), 0.0))
    total = half_density_total(d)

    # finite anchor; the mass of sqrt(pdf) below it is folded into the running total
    if math.isinf(lo):
        anchor = float(d.quantile(1e-14))
        acc = piece(sqrt_pdf, lo, anchor)
    else:
        anchor, acc = lo, 0.0

    spread = float(d.quantile(0.9)) - float(d.quantile(0.1))
    step0 = max(spread / n_atoms, 1e-9 * max(1.0, abs(anchor)))

    positions = np.empty(n_atoms)
    x_prev = anchor
    for i in range(n_atoms):
        target = (2 * i + 1) / (2 * n_atoms) * total
        x_prev = _invert_integral(sqrt_pdf, x_prev, target - acc, step0)
        positions[i] = x_prev
        acc = target

    return DiscreteMeasure(positions, _midpoint_weights(d, positions))


def _midpoint_weights(d: Distribution, positions: np.ndarray) -> np.ndarray:
    """Weights of the midpoint cells around each position (they telescope to 1)."""
    if positions.size == 1:
        return np.array([1.0])
    mids = 0.5 * (positions[:-1] + positions[1:])
    f_mid = np.asarray(d.cdf(mids), dtype=np.float64)
    padded = np.concatenate(([0.0], f_mid, [1.0]))
    return np.diff(padded)


def asympt_compress_discrete(m: DiscreteMeasure, n_atoms: int) -> DiscreteMeasure:
    """Half-density compression of a discrete measure via its interpolated CDF.

    The piecewise-linear CDF through (position, cumulative weight) nodes has a
    constant density on each inter-atom gap (the first atom's mass remains a
    point mass and contributes nothing to the half-density).  Positions go at
    the half-density quantiles of that interpolation, weights come from the
    interpolated CDF at midpoints.  Measures already within budget pass through.
    """
    if n_atoms < 1:
        raise ValueError(f"need at least one atom, got {n_atoms}")
    if m.n_atoms <= n_atoms:
        return m
    pos = m.positions
    gaps = np.diff(pos)
    gap_mass = m.weights[1:]
    seg_hd = np.sqrt(gap_mass * gaps)          # integral of sqrt(density) per gap
    density_rt = np.sqrt(gap_mass / gaps)      # sqrt(density), constant per gap
    cum_hd = np.concatenate(([0.0], np.cumsum(seg_hd)))
    total = cum_hd[-1]

    targets = (2.0 * np.arange(n_atoms) + 1.0) / (2.0 * n_atoms) * total
    k = np.clip(np.searchsorted(cum_hd, targets, side="right") - 1, 0, gaps.size - 1)
    new_pos = pos[k] + (targets - cum_hd[k]) / density_rt[k]

    new_pos, _ = merge_sorted_atoms(new_pos, np.full(new_pos.shape, 1.0 / new_pos.size))
    if new_pos.size == 1:
        return DiscreteMeasure(new_pos, np.array([1.0]))
    mids = 0.5 * (new_pos[:-1] + new_pos[1:])
    g_mid = np.interp(mids, pos, m.cum_weights)
    weights = np.diff(np.concatenate(([0.0], g_mid, [1.0])))
    keep = weights > 0.0
    return DiscreteMeasure.from_atoms(new_pos[keep], weights[keep])


# --- optimal quantizer ----------------------------------------------------------


def _stationarity_vector(d: Distribution, x: np.ndarray) -> np.ndarray:
    """2 F(x_i) - F(m_i) - F(m_{i-1}) with sentinels 0 and 1.

    Evaluated in survival form for atoms past the median so the residual stays
    meaningful deep in the upper tail, where 1 - F rounds to 0 in CDF form.
    """
    f_x = np.asarray(d.cdf(x), dtype=np.float64)
    if x.size == 1:
        return np.array([2.0 * f_x[0] - 1.0])
    mids = 0.5 * (x[:-1] + x[1:])
    f_mid = np.asarray(d.cdf(mids), dtype=np.float64)
    s_mid = np.asarray(d.sf(mids), dtype=np.float64)
    s_x = np.asarray(d.sf(x), dtype=np.float64)
    cdf_form = 2.0 * f_x - np.concatenate(([0.0], f_mid)) - np.concatenate((f_mid, [1.0]))
    surv_form = np.concatenate(([1.0], s_mid)) + np.concatenate((s_mid, [0.0])) - 2.0 * s_x
    return np.where(f_x <= 0.5, cdf_form, surv_form)


def stationarity_residual(d: Distribution, m: DiscreteMeasure) -> float:
    """max_i |2 F(x_i) - F(m_i) - F(m_{i-1})| with boundary sentinels 0 and 1."""
    return float(np.max(np.abs(_stationarity_vector(d, m.positions))))


def _solve_tridiagonal(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Banded solve; NaNs (not an exception) on a singular system."""
    n = diag.size
    ab = np.zeros((3, n))
    ab[0, 1:] = upper
    ab[1, :] = diag
    ab[2, :-1] = lower
    try:
        return solve_banded((1, 1), ab, rhs)
    except (np.linalg.LinAlgError, ValueError):
        return np.full(n, np.nan)


def _lloyd_step(d: Distribution, x: np.ndarray) -> np.ndarray:
    """Move every atom to the median of its midpoint cell (monotone by construction)."""
    mids = 0.5 * (x[:-1] + x[1:])
    f_mid = np.asarray(d.cdf(mids), dtype=np.float64)
    s_mid = np.asarray(d.sf(mids), dtype=np.float64)
    target_f = 0.5 * (np.concatenate(([0.0], f_mid)) + np.concatenate((f_mid, [1.0])))
    target_s = 0.5 * (np.concatenate(([1.0], s_mid)) + np.concatenate((s_mid, [0.0])))
    low = target_f <= 0.5
    prop = np.empty_like(x)
    if low.any():
        prop[low] = d.quantile(target_f[low])
    if (~low).any():
        prop[~low] = d.isf(target_s[~low])
    return prop


def _finalize_optimal(d: Distribution, x: np.ndarray) -> DiscreteMeasure:
    lo, hi = d.support()
    mids = 0.5 * (x[:-1] + x[1:])
    # per-cell mass, not a CDF diff: adjacent tail midpoints can sit closer
    # together than one ulp of 1.0, which would zero the weight
    a = np.concatenate(([lo], mids))
    b = np.concatenate((mids, [hi]))
    weights = np.asarray(d.mass(a, b), dtype=np.float64)
    return DiscreteMeasure(x, weights / weights.sum())


def optimal_quantizer(
    d: Distribution,
    n_atoms: int,
    tol: float = 1e-10,
    max_sweeps: int = 200_000,
) -> DiscreteMeasure:
    """Solve the W1 stationarity system 2 F(x_i) = F(m_{i-1}) + F(m_i).

    The driving iteration is the Lloyd map (every atom to the median of its
    midpoint cell), which decreases the transport cost monotonically and so
    settles at a local minimum rather than an arbitrary stationary point; a
    Newton step on the tridiagonal system is taken whenever it cuts the
    residual sharply, which turns the linear tail of the Lloyd convergence
    into a few quadratic steps.  Initialized from the half-density quantizer
    (equal-mass quantile grid when that is unavailable).  For multimodal laws
    the result is a stationary, locally optimal configuration.
    """
    if n_atoms < 1:
        raise ValueError(f"need at least one atom, got {n_atoms}")
    if n_atoms == 1:
        return DiscreteMeasure(np.array([float(d.quantile(0.5))]), np.array([1.0]))

    levels = (2.0 * np.arange(n_atoms) + 1.0) / (2.0 * n_atoms)
    try:
        x = asymptotically_optimal_quantizer(d, n_atoms).positions.copy()
    except (DivergentHalfDensity, NoConvergence):
        x = np.asarray(d.quantile(levels), dtype=np.float64)

    lo, hi = d.support()
    res_vec = _stationarity_vector(d, x)
    res = float(np.max(np.abs(res_vec)))
    for _sweep in range(max_sweeps):
        if res <= tol:
            return _finalize_optimal(d, x)

        mids = 0.5 * (x[:-1] + x[1:])
        pdf_x = np.asarray(d.pdf(x), dtype=np.float64)
        pdf_mid = np.asarray(d.pdf(mids), dtype=np.float64)
        diag = 2.0 * pdf_x - 0.5 * np.concatenate(([0.0], pdf_mid)) - 0.5 * np.concatenate((pdf_mid, [0.0]))
        off = -0.5 * pdf_mid
        cand = x + _solve_tridiagonal(off, diag, off, -res_vec)
        if (
            np.all(np.isfinite(cand))
            and np.all(np.diff(cand) > 0.0)
            and cand[0] > lo
            and cand[-1] < hi
        ):
            cand_vec = _stationarity_vector(d, cand)
            cand_res = float(np.max(np.abs(cand_vec)))
            # only accept clear contractions; mild ones would let Newton drag
            # the iterate toward a stationary point that is not a minimum
            if cand_res <= 0.3 * res:
                x, res_vec, res = cand, cand_vec, cand_res
                continue
        x = _lloyd_step(d, x)
        res_vec = _stationarity_vector(d, x)
        res = float(np.max(np.abs(res_vec)))

    raise NoConvergence(
        f"stationarity residual still above {tol:g} after {max_sweeps} sweeps"
    )


def tail_rate_estimate(d: Distribution, rule: SplitRule, n_max: int, window: int = 6) -> float:
    """Least-squares slope of log W1 against depth over the last `window` depths."""
    if window < 2 or n_max < window - 1:
        raise ValueError(f"need at least two depths in the window, got n_max={n_max}, window={window}")
    ns = np.arange(n_max - window + 1, n_max + 1)
    w1s = np.array([w1_via_cells(d, rule, int(n)) for n in ns])
    return float(np.polyfit(ns, np.log(w1s), 1)[0])
