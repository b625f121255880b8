"""Monte Carlo baseline: W1 error of the empirical measure.

The empirical measure of n i.i.d. samples converges to the sampled law at rate
n^{-1/2}, with sqrt(n) * E[W1] -> sqrt(2/pi) * integral of sqrt(F(1-F)).  Both
sides are computed here: `empirical_w1` measures single draws exactly, and
`asymptotic_constant` evaluates the limit, which in turn prices how many samples
match a given deterministic error (`equivalent_mc_count`).

Sampling is counter-based (see measures.counter_uniforms): replicate r of a run
with seed s draws from the stream keyed by derive_seed(s, r), so reports are
reproducible for any replicate count and independent of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quad import integrate_decaying
from .measures import DiscreteMeasure, Distribution, derive_seed, mc_sample_stream
from .metrics import w1_continuous_discrete

__all__ = [
    "empirical_measure",
    "empirical_w1",
    "asymptotic_constant",
    "equivalent_mc_count",
    "McReport",
    "mc_report",
]


def empirical_measure(d: Distribution, count: int, seed: int) -> DiscreteMeasure:
    """Equal-weight measure on `count` i.i.d. samples of d."""
    if count < 1:
        raise ValueError("count must be positive")
    x = np.sort(mc_sample_stream(d, count, seed))
    return DiscreteMeasure.from_atoms(x, np.full(count, 1.0 / count))


def empirical_w1(d: Distribution, count: int, seed: int) -> float:
    """Exact W1 distance between one empirical measure and its law."""
    return w1_continuous_discrete(d, empirical_measure(d, count, seed))


def asymptotic_constant(d: Distribution, rel_tol: float = 1e-9) -> float:
    """Limit of sqrt(n) * E[W1(law, empirical_n)].

    Finite exactly when the law has slightly more than two moments; diverges
    for fat tails (DivergentIntegral propagates to the caller).
    """
    root_2_over_pi = math.sqrt(2.0 / math.pi)

    def integrand(x: np.ndarray) -> np.ndarray:
        f = d.cdf(x)
        s = d.sf(x)
        # f*s computed from the smaller factor's own form on each side
        return np.sqrt(np.clip(np.where(f <= 0.5, f * (1.0 - f), s * (1.0 - s)), 0.0, 0.25))

    lo, hi = d.support()
    return root_2_over_pi * integrate_decaying(integrand, lo, hi, rel_tol=rel_tol)


def equivalent_mc_count(d: Distribution, target_w1: float) -> int:
    """Samples needed for the asymptotic mean MC error to reach target_w1."""
    if not (target_w1 > 0.0):
        raise ValueError("target_w1 must be positive")
    c = asymptotic_constant(d)
    return math.ceil((c / target_w1) ** 2)


@dataclass(frozen=True)
class McReport:
    """Replicated empirical-measure error at one sample count."""

    count: int
    replicates: int
    seed: int
    mean_w1: float
    q95_w1: float
    values: np.ndarray


def mc_report(d: Distribution, count: int, replicates: int, seed: int) -> McReport:
    """Run `replicates` independent draws of size `count` and summarize.

    Replicate r uses the stream keyed by derive_seed(seed, r); the mean is an
    fsum in replicate order, so the report is byte-stable across runs.
    """
    if replicates < 1:
        raise ValueError("replicates must be positive")
    values = np.array(
        [empirical_w1(d, count, derive_seed(seed, r)) for r in range(replicates)]
    )
    mean = math.fsum(values.tolist()) / replicates
    q95 = float(np.quantile(values, 0.95)) if replicates > 1 else float(values[0])
    return McReport(
        count=count,
        replicates=replicates,
        seed=seed,
        mean_w1=mean,
        q95_w1=q95,
        values=values,
    )
