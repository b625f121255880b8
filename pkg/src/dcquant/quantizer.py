"""Recursive divide-and-conquer quantization.

A continuous law is cut into 2^n cells by applying the split rule n levels deep;
each leaf cell contributes one atom (at the rule's point for that cell) carrying
the cell's mass.  The recursion is processed breadth-first so each level is a
handful of vectorized closed-form evaluations; cells carry their endpoint CDF and
survival values so nothing is recomputed and deep-tail masses stay accurate.

If a split produces a child of numerically zero mass (<= 1e-15), the whole
subtree collapses to a single atom at the surviving child's split point, carrying
the parent's full mass.

The discrete variant operates on index ranges into the sorted atom array; the
mean rule splits at the weighted mean, the median rule at the piecewise-linear
interpolated CDF's midpoint level (interpolation is what gives both children
positive mass, which a step CDF cannot guarantee).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DepthTooLarge, UnsupportedRule
from .measures import MASS_TOL, DiscreteMeasure, Distribution, merge_sorted_atoms
from .splitrules import SplitRule, _geometric_mean

__all__ = ["Cell", "quantize", "quantize_with_cells", "quantize_discrete", "MAX_DEPTH"]

MAX_DEPTH = 30


@dataclass(frozen=True)
class Cell:
    """One cell of the recursive partition, with cached endpoint CDF/survival values."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float
    s_lo: float
    s_hi: float
    mass: float
    depth_remaining: int = 0


def _check_depth(n: int) -> None:
    if n < 0:
        raise ValueError(f"depth must be nonnegative, got {n}")
    if n > MAX_DEPTH:
        raise DepthTooLarge(f"depth {n} exceeds the cap of {MAX_DEPTH} (2^{n} atoms)")


def _split_points(rule, d, lo, hi, f_lo, f_hi, s_lo, s_hi, mass):
    """Vectorized split point for a batch of cells."""
    if rule is SplitRule.MEAN:
        s = d.partial_expectation(lo, hi) / mass
    elif rule is SplitRule.MEDIAN:
        s = np.empty_like(mass)
        target_f = 0.5 * (f_lo + f_hi)
        low = target_f <= 0.5
        if low.any():
            s[low] = d.quantile(target_f[low])
        if (~low).any():
            s[~low] = d.isf(0.5 * (s_lo[~low] + s_hi[~low]))
    elif rule is SplitRule.GEOMETRIC_MEAN:
        s = np.array([_geometric_mean(d, (l, h)) for l, h in zip(lo, hi)])
    else:
        raise TypeError(f"not a SplitRule: {rule!r}")
    return np.minimum(np.maximum(s, lo), hi)


def _quantize_arrays(d: Distribution, rule: SplitRule, n: int):
    """Run the recursion; return (positions, weights, cell arrays) sorted by position.

    Cell arrays is the tuple (lo, hi, f_lo, f_hi, s_lo, s_hi, mass) aligned with atoms.
    """
    _check_depth(n)
    if not isinstance(rule, SplitRule):
        raise TypeError(f"not a SplitRule: {rule!r}")
    d.mean()  # laws without a finite first moment cannot be quantized meaningfully

    support_lo, support_hi = d.support()
    lo = np.array([support_lo])
    hi = np.array([support_hi])
    f_lo = np.array([0.0])
    f_hi = np.array([1.0])
    s_lo = np.array([1.0])
    s_hi = np.array([0.0])
    mass = np.array([1.0])

    done: list[tuple[float, float, tuple]] = []  # (position, weight, cell tuple)

    for _level in range(n):
        s = _split_points(rule, d, lo, hi, f_lo, f_hi, s_lo, s_hi, mass)
        f_s = np.asarray(d.cdf(s), dtype=np.float64)
        s_s = np.asarray(d.sf(s), dtype=np.float64)
        # each child's mass from its own endpoints, in the regime where both
        # endpoint values are relatively accurate; deriving one child as
        # mass - left would seed the deep tail with the parent's absolute
        # rounding, which dwarfs tail masses after a few levels
        left = np.where(f_s > 0.5, s_lo - s_s, f_s - f_lo)
        left = np.minimum(np.maximum(left, 0.0), mass)
        right = np.where(f_s > 0.5, s_s - s_hi, f_hi - f_s)
        right = np.minimum(np.maximum(right, 0.0), mass)

        deg_l = left <= MASS_TOL
        deg_r = right <= MASS_TOL
        terminal = deg_l | deg_r
        if terminal.any():
            for i in np.flatnonzero(terminal):
                cell = (lo[i], hi[i], f_lo[i], f_hi[i], s_lo[i], s_hi[i], mass[i])
                if deg_l[i] and deg_r[i]:
                    pos = s[i]
                elif deg_l[i]:
                    # all mass sits right of the split: the subtree is one atom there
                    pos = float(
                        _split_points(
                            rule, d,
                            s[i : i + 1], hi[i : i + 1],
                            f_s[i : i + 1], f_hi[i : i + 1],
                            s_s[i : i + 1], s_hi[i : i + 1],
                            mass[i : i + 1],
                        )[0]
                    )
                else:
                    pos = float(
                        _split_points(
                            rule, d,
                            lo[i : i + 1], s[i : i + 1],
                            f_lo[i : i + 1], f_s[i : i + 1],
                            s_lo[i : i + 1], s_s[i : i + 1],
                            mass[i : i + 1],
                        )[0]
                    )
                done.append((float(pos), float(mass[i]), cell))

        keep = ~terminal
        k = int(np.count_nonzero(keep))
        if k == 0:
            lo = np.empty(0)
            break

        def interleave(a_left, a_right):
            out = np.empty(2 * k)
            out[0::2] = a_left
            out[1::2] = a_right
            return out

        sk = s[keep]
        lo, hi = interleave(lo[keep], sk), interleave(sk, hi[keep])
        f_lo, f_hi = interleave(f_lo[keep], f_s[keep]), interleave(f_s[keep], f_hi[keep])
        s_lo, s_hi = interleave(s_lo[keep], s_s[keep]), interleave(s_s[keep], s_hi[keep])
        mass = interleave(left[keep], right[keep])

    if lo.size:
        pos = _split_points(rule, d, lo, hi, f_lo, f_hi, s_lo, s_hi, mass)
    else:
        pos = np.empty(0)

    if done:
        extra_pos = np.array([t[0] for t in done])
        extra_w = np.array([t[1] for t in done])
        extra_cells = np.array([t[2] for t in done]).T  # 7 x k
        pos = np.concatenate([pos, extra_pos])
        mass = np.concatenate([mass, extra_w])
        lo = np.concatenate([lo, extra_cells[0]])
        hi = np.concatenate([hi, extra_cells[1]])
        f_lo = np.concatenate([f_lo, extra_cells[2]])
        f_hi = np.concatenate([f_hi, extra_cells[3]])
        s_lo = np.concatenate([s_lo, extra_cells[4]])
        s_hi = np.concatenate([s_hi, extra_cells[5]])
        # column 6 is the terminal cell's mass == its atom weight, already in `mass`

    order = np.argsort(pos, kind="stable")
    pos = pos[order]
    w = mass[order]
    cells = (lo[order], hi[order], f_lo[order], f_hi[order], s_lo[order], s_hi[order], w)
    return _merge_aligned(pos, w, cells)


def _merge_aligned(pos, w, cells):
    """Merge coincident atoms (relative 1e-12) and fuse their adjacent cells."""
    if pos.size <= 1:
        return pos, w, cells
    gap = np.diff(pos)
    scale = np.maximum(np.abs(pos[:-1]), np.abs(pos[1:]))
    new_group = gap > 1e-12 * scale
    if new_group.all():
        return pos, w, cells
    starts = np.flatnonzero(np.concatenate(([True], new_group)))
    ends = np.concatenate([starts[1:], [pos.size]]) - 1
    wm = np.add.reduceat(w, starts)
    pm = np.add.reduceat(w * pos, starts) / wm
    lo, hi, f_lo, f_hi, s_lo, s_hi, _ = cells
    merged_cells = (lo[starts], hi[ends], f_lo[starts], f_hi[ends], s_lo[starts], s_hi[ends], wm)
    return pm, wm, merged_cells


def quantize(d: Distribution, rule: SplitRule, n: int) -> DiscreteMeasure:
    """Quantize a continuous law into at most 2^n atoms."""
    pos, w, _cells = _quantize_arrays(d, rule, n)
    return DiscreteMeasure(pos, w)


def quantize_with_cells(d: Distribution, rule: SplitRule, n: int):
    """Like quantize, additionally returning the leaf partition aligned with the atoms."""
    pos, w, cells = _quantize_arrays(d, rule, n)
    lo, hi, f_lo, f_hi, s_lo, s_hi, mass = cells
    cell_list = [
        Cell(float(lo[i]), float(hi[i]), float(f_lo[i]), float(f_hi[i]),
             float(s_lo[i]), float(s_hi[i]), float(mass[i]), 0)
        for i in range(pos.size)
    ]
    return DiscreteMeasure(pos, w), cell_list


# --- discrete measures --------------------------------------------------------


def _interp_median(pos, w, i0: int, i1: int) -> float:
    """Median of the cell pos[i0:i1] under the piecewise-linear interpolated CDF.

    Nodes are (pos[j], cumulative weight through atom j); below the first atom
    the interpolated CDF is clamped, so the result never leaves the cell.  The
    cumulative weights are local to the cell: differences of a measure-wide
    cumsum lose tail atoms whose weights sit below one ulp of the total.
    """
    local = np.cumsum(w[i0:i1])
    target = 0.5 * local[-1]
    j = int(np.searchsorted(local, target, side="left"))
    if j == 0:
        return float(pos[i0])
    # divide by the atom weight itself, not a cumsum difference
    frac = (target - local[j - 1]) / w[i0 + j]
    frac = min(max(frac, 0.0), 1.0)
    return float(pos[i0 + j - 1] + frac * (pos[i0 + j] - pos[i0 + j - 1]))


def quantize_discrete(m: DiscreteMeasure, rule: SplitRule, n: int) -> DiscreteMeasure:
    """Compress a discrete measure to at most 2^n atoms with the same recursion.

    Cells are index ranges into the sorted atom array, so the whole run costs
    O(m n).  When n >= m - 1 every leaf is a single atom and m is reproduced
    exactly.
    """
    _check_depth(n)
    if rule not in (SplitRule.MEAN, SplitRule.MEDIAN):
        raise UnsupportedRule(f"discrete quantization supports mean and median, not {rule.value}")

    pos = m.positions
    w = m.weights

    out_pos: list[float] = []
    out_w: list[float] = []
    stack: list[tuple[int, int, int]] = [(0, pos.size, n)]
    while stack:
        i0, i1, depth = stack.pop()
        if i1 - i0 == 1:
            out_pos.append(float(pos[i0]))
            out_w.append(float(w[i0]))
            continue
        # summed per cell, not as a cumsum difference: tail cells of a large
        # measure can hold only atoms below one ulp of the running total,
        # and the difference then collapses to exactly zero
        cell_w = float(np.sum(w[i0:i1]))
        if rule is SplitRule.MEAN:
            value = float(np.dot(w[i0:i1], pos[i0:i1])) / cell_w
        else:
            value = _interp_median(pos, w, i0, i1)
        if depth == 0:
            out_pos.append(value)
            out_w.append(float(cell_w))
            continue
        k = i0 + int(np.searchsorted(pos[i0:i1], value, side="right"))
        if k <= i0 or k >= i1:
            # a child came out empty: the subtree collapses onto the cell's own point
            out_pos.append(value)
            out_w.append(float(cell_w))
            continue
        # right pushed first so the left range is processed first (LIFO)
        stack.append((k, i1, depth - 1))
        stack.append((i0, k, depth - 1))

    p, q = merge_sorted_atoms(np.array(out_pos), np.array(out_w))
    return DiscreteMeasure(p, q)
