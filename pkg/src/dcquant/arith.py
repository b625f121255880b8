"""Arithmetic on quantized distributions.

The convolution of two discrete measures under an arithmetic operation is the
full product measure: every pair of atoms combines, weights multiply, coincident
results merge.  Chained arithmetic therefore squares the atom count at each
step; `fold` keeps it bounded by recompressing to 2^n atoms after every
operation (a strict left fold in list order, deliberately non-associative: the
result depends on the fold order exactly like the floating-point analogue).

`reference_pushforward` builds the ground truth a fold is compared against:
closed forms where they exist (sums of Gaussians, sums of same-rate
exponentials), otherwise the non-compressed product of high-resolution
quantizations, guarded against intermediate blowup.
"""

from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from .errors import PushforwardTooLarge
from .measures import DiscreteMeasure, Distribution, Exponential, Gamma, Gaussian, merge_sorted_atoms
from .quantizer import quantize, quantize_discrete
from .splitrules import SplitRule

__all__ = ["ArithOp", "convolve", "compress", "fold", "reference_pushforward", "ATOM_BUDGET"]

ATOM_BUDGET = 50_000_000


class ArithOp(enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"

    def apply_outer(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self is ArithOp.ADD:
            return np.add.outer(x, y)
        if self is ArithOp.SUB:
            return np.subtract.outer(x, y)
        return np.multiply.outer(x, y)

    @classmethod
    def from_name(cls, name: str) -> "ArithOp":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(o.value for o in cls)
            raise ValueError(f"unknown operation {name!r}; expected one of: {valid}") from None


def convolve(m1: DiscreteMeasure, m2: DiscreteMeasure, op: ArithOp = ArithOp.ADD) -> DiscreteMeasure:
    """Law of X op Y for independent X ~ m1, Y ~ m2."""
    pos = op.apply_outer(m1.positions, m2.positions).ravel()
    w = np.multiply.outer(m1.weights, m2.weights).ravel()
    order = np.argsort(pos, kind="stable")
    p, q = merge_sorted_atoms(pos[order], w[order])
    return DiscreteMeasure(p, q)


def compress(m: DiscreteMeasure, rule: SplitRule, n: int) -> DiscreteMeasure:
    """Recompress a discrete measure to at most 2^n atoms."""
    return quantize_discrete(m, rule, n)


def fold(
    ms: Sequence[DiscreteMeasure],
    op: ArithOp,
    rule: SplitRule,
    n: int,
) -> DiscreteMeasure:
    """Strict left fold: convolve with the next operand, recompress, repeat."""
    if len(ms) < 2:
        raise ValueError("fold needs at least two measures")
    acc = ms[0]
    for m in ms[1:]:
        acc = compress(convolve(acc, m, op), rule, n)
    return acc


def reference_pushforward(
    ds: Sequence[Distribution],
    op: ArithOp,
    grid_n: int,
) -> Distribution | DiscreteMeasure:
    """Ground truth for a k-fold operation on independent laws.

    Returns a closed-form law when one exists; otherwise the merged,
    non-compressed product of depth-grid_n mean-split quantizations.  grid_n
    should sit several levels above the depth under test (the convention in the
    sweeps is test depth + 4).  Raises PushforwardTooLarge rather than building
    an intermediate beyond ATOM_BUDGET atoms.
    """
    if len(ds) < 2:
        raise ValueError("need at least two distributions")
    if op is ArithOp.ADD and all(isinstance(d, Gaussian) for d in ds):
        mu = sum(d.mu for d in ds)
        var = sum(d.sigma**2 for d in ds)
        return Gaussian(mu, var**0.5)
    if op is ArithOp.ADD and all(isinstance(d, Exponential) for d in ds):
        rates = {d.rate for d in ds}
        if len(rates) == 1:
            return Gamma(float(len(ds)), rates.pop())

    parts = [quantize(d, SplitRule.MEAN, grid_n) for d in ds]
    acc = parts[0]
    for m in parts[1:]:
        count = acc.n_atoms * m.n_atoms
        if count > ATOM_BUDGET:
            raise PushforwardTooLarge(
                f"non-compressed product would hold {count} atoms (budget {ATOM_BUDGET})"
            )
        acc = convolve(acc, m, op)
    return acc
