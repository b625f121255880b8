"""Independent numeric oracles for the test suite.

Everything here deliberately avoids the library's computation paths: W1 is
integrated with generic adaptive quadrature over |F - G| instead of the
closed-form partial expectations, and the reference quantizer is a scalar
recursion whose conditional statistics also come from quadrature.  Agreement
between these and the library is the core correctness evidence.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from dcquant import (
    Bimodal,
    DiscreteMeasure,
    Exponential,
    Gaussian,
    HeavyTailed,
    Pareto,
    SplitRule,
    Uniform,
)

MASS_EPS = 1e-15

# the six catalog laws; positive-support subset reused where geomean applies
CATALOG = [
    Gaussian(0.0, 1.0),
    Exponential(1.0),
    Pareto(2.0, 1.0),
    HeavyTailed(),
    Bimodal(),
    Uniform(0.0, 1.0),
]
POSITIVE_CATALOG = [Exponential(1.0), Pareto(2.0, 1.0), HeavyTailed(), Uniform(0.0, 1.0)]

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def _quad(fn, a, b, **kw):
    kw.setdefault("limit", 300)
    val, _err = quad(fn, a, b, **kw)
    return val


def _tail_integral(d, a: float, hi: float) -> float:
    """Integral of the survival function over [a, hi]."""
    if isinstance(d, HeavyTailed):
        # sf(x) = e/(x ln^2 x) has antiderivative -e/ln x, so the tail mass
        # integral is exact; generic quadrature loses digits on this decay
        head = math.e / math.log(max(a, math.e))
        if math.isfinite(hi):
            head -= math.e / math.log(hi)
        return head
    return _quad(lambda x: float(d.sf(x)), a, hi)


def w1_quadrature(d, m: DiscreteMeasure) -> float:
    """W1(d, m) as the integral of |F_d - F_m|, one smooth piece at a time.

    The discrete CDF is constant between atoms, so each inter-atom segment is
    split at the unique crossing point of F_d with that constant; head and
    tail segments reduce to integrals of the CDF and survival function.
    """
    lo, hi = d.support()
    pos = np.asarray(m.positions, dtype=float)
    levels = np.concatenate(([0.0], np.cumsum(m.weights)))
    total = 0.0
    if pos[0] > lo:
        total += _quad(lambda x: float(d.cdf(x)), lo, float(pos[0]))
    for i in range(pos.size - 1):
        c = float(levels[i + 1])
        a, b = float(pos[i]), float(pos[i + 1])
        if c <= 0.0:
            xc = a
        elif c >= 1.0:
            xc = b
        else:
            xc = min(max(float(d.quantile(c)), a), b)
        total += _quad(lambda x: c - float(d.cdf(x)), a, xc)
        total += _quad(lambda x: float(d.cdf(x)) - c, xc, b)
    total += _tail_integral(d, float(pos[-1]), hi)
    return total


def _cell_mass(d, a: float, b: float) -> float:
    return float(d.cdf(b)) - float(d.cdf(a))


def _cond_mean_quad(d, a: float, b: float, mass: float) -> float:
    if isinstance(d, HeavyTailed) and math.isinf(b):
        # by parts: E[X; X >= a] = a sf(a) + int_a^inf sf, the latter exact
        a = max(a, math.e)
        val = a * float(d.sf(a)) + math.e / math.log(a)
        return val / mass
    val = _quad(lambda x: x * float(d.pdf(x)), a, b)
    return val / mass


def _cond_geomean_quad(d, a: float, b: float, mass: float) -> float:
    if a < 0.0:
        raise ValueError("geometric mean needs a nonnegative cell")
    val = _quad(lambda x: math.log(x) * float(d.pdf(x)), max(a, 0.0), b)
    return math.exp(val / mass)


def _scalar_split(d, rule: SplitRule, a: float, b: float, mass: float) -> float:
    if rule is SplitRule.MEAN:
        s = _cond_mean_quad(d, a, b, mass)
    elif rule is SplitRule.MEDIAN:
        s = float(d.quantile(float(d.cdf(a)) + 0.5 * mass))
    else:
        s = _cond_geomean_quad(d, a, b, mass)
    return min(max(s, a), b)


def scalar_quantize(d, rule: SplitRule, n: int) -> list[tuple[float, float]]:
    """Plain-Python reference recursion: returns sorted (position, weight) pairs.

    Mirrors the documented semantics: n levels of splitting, a child of mass
    below 1e-15 collapses the subtree to one atom at the surviving child's
    split point with the parent's full mass.
    """
    lo, hi = d.support()
    atoms: list[tuple[float, float]] = []

    def rec(a: float, b: float, mass: float, depth: int) -> None:
        s = _scalar_split(d, rule, a, b, mass)
        if depth == 0:
            atoms.append((s, mass))
            return
        m_left = min(max(_cell_mass(d, a, s), 0.0), mass)
        m_right = mass - m_left
        if m_left <= MASS_EPS and m_right <= MASS_EPS:
            atoms.append((s, mass))
            return
        if m_left <= MASS_EPS:
            atoms.append((_scalar_split(d, rule, s, b, m_right), mass))
            return
        if m_right <= MASS_EPS:
            atoms.append((_scalar_split(d, rule, a, s, m_left), mass))
            return
        rec(a, s, m_left, depth - 1)
        rec(s, b, m_right, depth - 1)

    rec(lo, hi, 1.0, n)
    atoms.sort()
    return atoms


def mc_constant_quadrature(d) -> float:
    """sqrt(2/pi) * integral of sqrt(F(1-F)) by direct quadrature.

    The integrand decays like sqrt(sf), so quantile cutoffs are doubled (not
    just nudged) and the two widths must agree to 1e-9 relative.  Suitable for
    exponential-type tails only; polynomial tails need a closed-form oracle.
    """

    def integrand(x: float) -> float:
        # F(1-F) as cdf*sf: the survival factor keeps the tail exact
        return math.sqrt(max(float(d.cdf(x)) * float(d.sf(x)), 0.0))

    lo, hi = d.support()
    ladder = [10.0 ** -(2 * j) for j in range(1, 9)]  # 1e-2 .. 1e-16

    def run(mult: float) -> float:
        # piecewise over quantile breakpoints keeps each segment well scaled
        pts = [float(d.quantile(0.5))]
        for q in ladder:
            pts.append(float(d.isf(q)))
        pts.append(mult * pts[-1])
        if math.isfinite(hi):
            pts = [min(p, hi) for p in pts] + [hi]
        if math.isfinite(lo):
            head = [lo]
        else:
            head = [mult * float(d.quantile(ladder[-1]))]
            head += [float(d.quantile(q)) for q in reversed(ladder)]
        pts = head + pts
        return sum(
            _quad(integrand, a, b, limit=200, epsabs=1e-14, epsrel=1e-12)
            for a, b in zip(pts, pts[1:])
            if b > a
        )

    wide = run(2.0)
    wider = run(4.0)
    if abs(wider - wide) > 1e-9 * max(abs(wide), 1.0):
        raise ArithmeticError(f"MC-constant quadrature did not settle: {wide} vs {wider}")
    return SQRT_2_OVER_PI * wider


def random_discrete(rng: np.random.Generator, max_atoms: int = 24, spread: float = 10.0) -> DiscreteMeasure:
    """Random valid discrete measure with well-separated atoms."""
    k = int(rng.integers(1, max_atoms + 1))
    pos = np.sort(rng.uniform(-spread, spread, size=k))
    # enforce gaps so the 1e-12 relative merge never fires
    pos = pos + np.arange(k) * (2e-6 * spread)
    w = rng.uniform(0.1, 1.0, size=k)
    w = w / w.sum()
    return DiscreteMeasure(pos, w)
