"""Split rules: how a cell of a continuous law gets cut into two children.

Each rule maps (law, cell) to a point inside the cell.  The mean and median
rules admit a contraction factor c: on a cell of width L, the two children of a
mean split have width sums bounded by the parent's, with the one-point error of
the split contracting like c * L / 2 per level on compact supports (c = 1/2 for
the mean, 1 for the median).  The geometric mean has no such factor; bound
machinery reports it as unavailable.
"""

from __future__ import annotations

import enum
import math

import numpy as np
from scipy.integrate import quad

from .errors import NegativeSupport, ZeroMassCell
from .measures import MASS_TOL, Distribution, conditional_mean, conditional_median

__all__ = ["SplitRule", "split"]

# absolute tolerance for the geometric-mean log-moment quadrature
_LOG_MOMENT_ATOL = 1e-10


class SplitRule(enum.Enum):
    MEAN = "mean"
    MEDIAN = "median"
    GEOMETRIC_MEAN = "geomean"

    @property
    def c_factor(self) -> float | None:
        """Contraction factor of the one-point error on compact cells; None if unknown."""
        if self is SplitRule.MEAN:
            return 0.5
        if self is SplitRule.MEDIAN:
            return 1.0
        return None

    @classmethod
    def from_name(cls, name: str) -> "SplitRule":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(r.value for r in cls)
            raise ValueError(f"unknown split rule {name!r}; expected one of: {valid}") from None


def _geometric_mean(d: Distribution, cell: tuple[float, float]) -> float:
    a, b = cell
    lo, hi = d.support()
    a = max(a, lo)
    b = min(b, hi)
    if a < 0.0:
        raise NegativeSupport(f"geometric mean undefined on cell [{a}, {b}] touching negative reals")
    mass = float(d.mass(a, b))
    if mass <= MASS_TOL:
        raise ZeroMassCell(f"cell [{a}, {b}] carries mass {mass!r}")
    val, _err = quad(
        lambda t: math.log(t) * float(d.pdf(t)) / mass,
        a,
        b,
        epsabs=_LOG_MOMENT_ATOL,
        epsrel=0.0,
        limit=200,
    )
    g = math.exp(val)
    return min(max(g, a), b)


def split(rule: SplitRule, d: Distribution, cell: tuple[float, float]) -> float:
    """Split point of the rule on the given cell; lies inside the cell."""
    if rule is SplitRule.MEAN:
        return conditional_mean(d, cell)
    if rule is SplitRule.MEDIAN:
        return conditional_median(d, cell)
    if rule is SplitRule.GEOMETRIC_MEAN:
        return _geometric_mean(d, cell)
    raise TypeError(f"not a SplitRule: {rule!r}")
