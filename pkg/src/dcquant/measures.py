"""Probability measures: a validated discrete type and a small catalog of continuous laws.

Every continuous law exposes cdf/sf, quantile/isf, pdf, and partial first moments in
closed form, vectorized over numpy arrays.  The survival-side variants (sf, isf, upper
moment) exist so that deep-tail cells keep full relative precision: computing a tail
mass as ``cdf(b) - cdf(a)`` with both values near 1 would throw away every significant
digit that matters at recursion depths above ~10.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.special as spec_fn

from .errors import NonFiniteMean, ZeroMassCell

__all__ = [
    "DiscreteMeasure",
    "Distribution",
    "Gaussian",
    "Exponential",
    "Pareto",
    "HeavyTailed",
    "Bimodal",
    "Uniform",
    "Gamma",
    "conditional_mean",
    "conditional_median",
    "mc_sample_stream",
    "merge_sorted_atoms",
]

# Atoms closer than this (relatively) are considered the same point.
MERGE_RTOL = 1e-12
# Below this mass a cell counts as empty.
MASS_TOL = 1e-15
_WEIGHT_SUM_TOL = 1e-12


def merge_sorted_atoms(positions: np.ndarray, weights: np.ndarray, rtol: float = MERGE_RTOL):
    """Merge consecutive atoms whose positions coincide within relative ``rtol``.

    Input must be sorted by position.  Merged position is the weight-averaged
    location, which keeps the first moment exact.  Returns (positions, weights).
    """
    positions = np.asarray(positions, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    if positions.size <= 1:
        return positions, weights
    gap = np.diff(positions)
    scale = np.maximum(np.abs(positions[:-1]), np.abs(positions[1:]))
    new_group = gap > rtol * scale
    if new_group.all():
        return positions, weights
    starts = np.flatnonzero(np.concatenate(([True], new_group)))
    w = np.add.reduceat(weights, starts)
    wp = np.add.reduceat(weights * positions, starts)
    keep = w > 0.0
    return (wp[keep] / w[keep]), w[keep]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely supported probability measure on the real line.

    positions: strictly increasing, finite
    weights:   strictly positive, summing to 1 within 1e-12
    """

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.ascontiguousarray(self.positions, dtype=np.float64)
        w = np.ascontiguousarray(self.weights, dtype=np.float64)
        if pos.ndim != 1 or w.ndim != 1:
            raise ValueError("positions and weights must be one-dimensional")
        if pos.size != w.size:
            raise ValueError(f"length mismatch: {pos.size} positions, {w.size} weights")
        if pos.size == 0:
            raise ValueError("a probability measure needs at least one atom")
        if not np.all(np.isfinite(pos)):
            raise ValueError("positions must be finite")
        if pos.size > 1 and not np.all(np.diff(pos) > 0.0):
            raise ValueError("positions must be strictly increasing")
        if not np.all(w > 0.0):
            raise ValueError("weights must be strictly positive")
        total = float(np.sum(w))
        if not math.isfinite(total) or abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 within {_WEIGHT_SUM_TOL}, got {total!r}")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_atoms(cls, positions, weights, rtol: float = MERGE_RTOL) -> "DiscreteMeasure":
        """Sort, merge coincident positions, validate."""
        positions = np.asarray(positions, dtype=np.float64).ravel()
        weights = np.asarray(weights, dtype=np.float64).ravel()
        order = np.argsort(positions, kind="stable")
        pos, w = merge_sorted_atoms(positions[order], weights[order], rtol)
        return cls(pos, w)

    @classmethod
    def point(cls, x: float) -> "DiscreteMeasure":
        return cls(np.array([float(x)]), np.array([1.0]))

    @property
    def n_atoms(self) -> int:
        return self.positions.size

    def mean(self) -> float:
        return float(np.dot(self.positions, self.weights))

    def span(self) -> float:
        return float(self.positions[-1] - self.positions[0])

    @cached_property
    def cum_weights(self) -> np.ndarray:
        """cum_weights[i] = mass at or left of atom i."""
        return np.cumsum(self.weights)

    @cached_property
    def tail_weights(self) -> np.ndarray:
        """tail_weights[i] = mass strictly right of atom i (exact in the tail)."""
        return np.cumsum(self.weights[::-1])[::-1] - self.weights

    def cdf_at(self, x) -> np.ndarray:
        """Step CDF evaluated at x (mass at or left of x)."""
        idx = np.searchsorted(self.positions, x, side="right")
        padded = np.concatenate(([0.0], self.cum_weights))
        return padded[idx]


class Distribution(ABC):
    """Continuous law with closed-form CDF machinery, vectorized over arrays.

    ``partial_expectation(a, b)`` is the unnormalized first moment of the law
    restricted to [a, b].  Subclasses provide the two one-sided antiderivatives
    ``_moment_below`` / ``_moment_above``; the generic implementation picks
    whichever side keeps the subtraction benign.
    """

    #: whether the half-density quantizer's regularity conditions are known to hold
    half_density_ok: bool = True
    #: CLI spelling, e.g. "exp:1"
    label: str = ""

    @abstractmethod
    def support(self) -> tuple[float, float]: ...

    @abstractmethod
    def cdf(self, x): ...

    @abstractmethod
    def pdf(self, x): ...

    @abstractmethod
    def quantile(self, p): ...

    @abstractmethod
    def mean(self) -> float: ...

    def sf(self, x):
        return 1.0 - self.cdf(x)

    def isf(self, q):
        return self.quantile(1.0 - q)

    @abstractmethod
    def _moment_below(self, x):
        """Integral of t over (-inf, x]; tends to 0 at the left end of the support."""

    @abstractmethod
    def _moment_above(self, x):
        """Integral of t over [x, inf); tends to 0 at the right end of the support."""

    def _clamp(self, a, b):
        lo, hi = self.support()
        a = np.clip(a, lo, hi)
        b = np.clip(b, lo, hi)
        return a, np.maximum(a, b)

    def partial_expectation(self, a, b):
        """Integral of t d mu(t) over [a, b] (endpoints clamped to the support)."""
        a, b = self._clamp(a, b)
        below = self._moment_below(b) - self._moment_below(a)
        above = self._moment_above(a) - self._moment_above(b)
        return np.where(self.cdf(a) > 0.5, above, below)

    def mass(self, a, b):
        """mu([a, b]) computed on whichever side of the median avoids cancellation."""
        a, b = self._clamp(a, b)
        fb = self.cdf(b)
        lower = fb - self.cdf(a)
        upper = self.sf(a) - self.sf(b)
        return np.where(fb > 0.5, upper, lower)

    def sample(self, u):
        """Inverse-CDF transform of uniforms in (0, 1)."""
        return self.quantile(u)


def _where_finite(x, formula, limit, safe_value=1.0):
    """formula(x) where x is finite, otherwise the given limit value.

    safe_value replaces the non-finite entries before formula runs, so it must
    lie where the formula is defined.
    """
    x = np.asarray(x, dtype=np.float64)
    finite = np.isfinite(x)
    safe = np.where(finite, x, safe_value)
    return np.where(finite, formula(safe), limit)


_SQRT2 = math.sqrt(2.0)
_INV_SQRT2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _std_normal_pdf(z):
    return _INV_SQRT2PI * np.exp(-0.5 * np.square(z))


def _std_normal_cdf(z):
    return 0.5 * spec_fn.erfc(-z / _SQRT2)


def _std_normal_sf(z):
    return 0.5 * spec_fn.erfc(z / _SQRT2)


class Gaussian(Distribution):
    def __init__(self, mu: float = 0.0, sigma: float = 1.0):
        if not (sigma > 0.0 and math.isfinite(sigma) and math.isfinite(mu)):
            raise ValueError(f"need finite mu and sigma > 0, got mu={mu}, sigma={sigma}")
        self.mu = float(mu)
        self.sigma = float(sigma)
        self.label = f"gaussian:{mu:g},{sigma:g}"

    def support(self):
        return (-math.inf, math.inf)

    def _z(self, x):
        return (np.asarray(x, dtype=np.float64) - self.mu) / self.sigma

    def cdf(self, x):
        return _std_normal_cdf(self._z(x))

    def sf(self, x):
        return _std_normal_sf(self._z(x))

    def pdf(self, x):
        return _std_normal_pdf(self._z(x)) / self.sigma

    def quantile(self, p):
        # erfcinv keeps full precision in the lower tail, unlike erfinv(2p-1)
        return self.mu - self.sigma * _SQRT2 * spec_fn.erfcinv(2.0 * np.asarray(p, dtype=np.float64))

    def isf(self, q):
        return self.mu + self.sigma * _SQRT2 * spec_fn.erfcinv(2.0 * np.asarray(q, dtype=np.float64))

    def mean(self):
        return self.mu

    def _moment_below(self, x):
        z = self._z(x)
        return self.mu * _std_normal_cdf(z) - self.sigma * _std_normal_pdf(z)

    def _moment_above(self, x):
        z = self._z(x)
        return self.mu * _std_normal_sf(z) + self.sigma * _std_normal_pdf(z)


class Exponential(Distribution):
    def __init__(self, rate: float = 1.0):
        if not (rate > 0.0 and math.isfinite(rate)):
            raise ValueError(f"need rate > 0, got {rate}")
        self.rate = float(rate)
        self.label = f"exp:{rate:g}"

    def support(self):
        return (0.0, math.inf)

    def cdf(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
        return -np.expm1(-self.rate * x)

    def sf(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
        return np.exp(-self.rate * x)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x < 0.0, 0.0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)))

    def quantile(self, p):
        return -np.log1p(-np.asarray(p, dtype=np.float64)) / self.rate

    def isf(self, q):
        return -np.log(np.asarray(q, dtype=np.float64)) / self.rate

    def mean(self):
        return 1.0 / self.rate

    def _moment_above(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
        m = 1.0 / self.rate
        return _where_finite(x, lambda t: (t + m) * np.exp(-self.rate * t), 0.0)

    def _moment_below(self, x):
        return self.mean() - self._moment_above(x)


class Pareto(Distribution):
    """Survival (x_m / x)^alpha on [x_m, inf).  Finite mean only for alpha > 1."""

    def __init__(self, alpha: float, x_m: float = 1.0):
        if not (alpha > 0.0 and math.isfinite(alpha) and x_m > 0.0 and math.isfinite(x_m)):
            raise ValueError(f"need alpha > 0 and x_m > 0, got alpha={alpha}, x_m={x_m}")
        self.alpha = float(alpha)
        self.x_m = float(x_m)
        self.label = f"pareto:{alpha:g},{x_m:g}"

    def support(self):
        return (self.x_m, math.inf)

    def cdf(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), self.x_m)
        return -np.expm1(self.alpha * (np.log(self.x_m) - np.log(x)))

    def sf(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), self.x_m)
        return np.exp(self.alpha * (np.log(self.x_m) - np.log(x)))

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        inside = x >= self.x_m
        xs = np.maximum(x, self.x_m)
        val = self.alpha / xs * np.exp(self.alpha * (np.log(self.x_m) - np.log(xs)))
        return np.where(inside, val, 0.0)

    def quantile(self, p):
        return self.x_m * np.exp(-np.log1p(-np.asarray(p, dtype=np.float64)) / self.alpha)

    def isf(self, q):
        return self.x_m * np.asarray(q, dtype=np.float64) ** (-1.0 / self.alpha)

    def mean(self):
        if self.alpha <= 1.0:
            raise NonFiniteMean(f"Pareto(alpha={self.alpha}) has no finite mean")
        return self.alpha * self.x_m / (self.alpha - 1.0)

    def _check_mean(self):
        if self.alpha <= 1.0:
            raise NonFiniteMean(f"Pareto(alpha={self.alpha}) has no finite mean")

    def _moment_above(self, x):
        self._check_mean()
        x = np.maximum(np.asarray(x, dtype=np.float64), self.x_m)
        a = self.alpha
        return a / (a - 1.0) * self.x_m * np.exp((1.0 - a) * (np.log(x) - np.log(self.x_m)))

    def _moment_below(self, x):
        self._check_mean()
        x = np.maximum(np.asarray(x, dtype=np.float64), self.x_m)
        a = self.alpha
        return -a / (a - 1.0) * self.x_m * np.expm1((1.0 - a) * (np.log(x) - np.log(self.x_m)))


class HeavyTailed(Distribution):
    """Survival e / (x ln^2 x) on [e, inf); mean 2e, but so heavy that the
    half-density integral diverges (the quantile transform still has a closed
    form through the Lambert W function)."""

    half_density_ok = False

    def __init__(self):
        self.label = "heavytailed"

    def support(self):
        return (math.e, math.inf)

    def sf(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), math.e)
        return _where_finite(x, lambda t: math.e / (t * np.square(np.log(t))), 0.0, safe_value=math.e)

    def cdf(self, x):
        return 1.0 - self.sf(x)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        inside = x >= math.e
        xs = np.maximum(x, math.e)
        lx = np.log(xs)
        val = math.e * (lx + 2.0) / (np.square(xs) * lx**3)
        return np.where(inside, val, 0.0)

    def isf(self, q):
        # solve x ln^2 x = e/q:  x = exp(2 W0(sqrt(e/q)/2))
        q = np.asarray(q, dtype=np.float64)
        w = spec_fn.lambertw(np.sqrt(math.e / q) / 2.0, k=0)
        return np.exp(2.0 * np.real(w))

    def quantile(self, p):
        return self.isf(1.0 - np.asarray(p, dtype=np.float64))

    def mean(self):
        return 2.0 * math.e

    def _moment_above(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), math.e)
        return _where_finite(
            x, lambda t: math.e * (1.0 / np.log(t) + 1.0 / np.square(np.log(t))), 0.0, safe_value=math.e
        )

    def _moment_below(self, x):
        # 2e - moment_above, rewritten in u = ln x - 1 so it vanishes cleanly at x = e
        x = np.maximum(np.asarray(x, dtype=np.float64), math.e)
        def f(t):
            u = np.log(t) - 1.0
            return math.e * u * (2.0 * u + 3.0) / np.square(1.0 + u)
        return _where_finite(x, f, 2.0 * math.e, safe_value=math.e)


def _bisect_quantile(cdf_fn, targets, lo: float, hi: float, iters: int = 100):
    """Vectorized monotone inversion by bisection; cdf_fn must be nondecreasing."""
    t = np.asarray(targets, dtype=np.float64)
    a = np.full(t.shape, lo)
    b = np.full(t.shape, hi)
    for _ in range(iters):
        m = 0.5 * (a + b)
        too_low = cdf_fn(m) < t
        a = np.where(too_low, m, a)
        b = np.where(too_low, b, m)
    return 0.5 * (a + b)


class Bimodal(Distribution):
    """Two-component Gaussian mixture (2/3) N(2, 1/2) + (1/3) N(-2, 1/2);
    density (2 e^{-(x-2)^2} + e^{-(x+2)^2}) / (3 sqrt(pi))."""

    _mus = np.array([2.0, -2.0])
    _sigma = 1.0 / _SQRT2
    _ws = np.array([2.0 / 3.0, 1.0 / 3.0])
    # static bisection bracket; covers quantile levels down to ~1e-270
    _BRACKET = (-30.0, 30.0)

    def __init__(self):
        self.label = "bimodal"

    def support(self):
        return (-math.inf, math.inf)

    def _zs(self, x):
        x = np.asarray(x, dtype=np.float64)
        return (x[..., None] - self._mus) / self._sigma

    def cdf(self, x):
        return np.dot(_std_normal_cdf(self._zs(x)), self._ws)

    def sf(self, x):
        return np.dot(_std_normal_sf(self._zs(x)), self._ws)

    def pdf(self, x):
        return np.dot(_std_normal_pdf(self._zs(x)), self._ws) / self._sigma

    def quantile(self, p):
        return _bisect_quantile(self.cdf, p, *self._BRACKET)

    def isf(self, q):
        # invert on the survival side to keep tail resolution
        qq = np.asarray(q, dtype=np.float64)
        return _bisect_quantile(lambda x: -self.sf(x), -qq, *self._BRACKET)

    def mean(self):
        return float(np.dot(self._ws, self._mus))

    def _moment_below(self, x):
        z = self._zs(x)
        comp = self._mus * _std_normal_cdf(z) - self._sigma * _std_normal_pdf(z)
        return np.dot(comp, self._ws)

    def _moment_above(self, x):
        z = self._zs(x)
        comp = self._mus * _std_normal_sf(z) + self._sigma * _std_normal_pdf(z)
        return np.dot(comp, self._ws)


class Uniform(Distribution):
    def __init__(self, a: float = 0.0, b: float = 1.0):
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"need finite a < b, got a={a}, b={b}")
        self.a = float(a)
        self.b = float(b)
        self.label = f"uniform:{a:g},{b:g}"

    def support(self):
        return (self.a, self.b)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=np.float64), self.a, self.b)
        return (x - self.a) / (self.b - self.a)

    def sf(self, x):
        x = np.clip(np.asarray(x, dtype=np.float64), self.a, self.b)
        return (self.b - x) / (self.b - self.a)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        inside = (x >= self.a) & (x <= self.b)
        return np.where(inside, 1.0 / (self.b - self.a), 0.0)

    def quantile(self, p):
        return self.a + np.asarray(p, dtype=np.float64) * (self.b - self.a)

    def mean(self):
        return 0.5 * (self.a + self.b)

    def _moment_below(self, x):
        x = np.clip(np.asarray(x, dtype=np.float64), self.a, self.b)
        return 0.5 * (np.square(x) - self.a**2) / (self.b - self.a)

    def _moment_above(self, x):
        x = np.clip(np.asarray(x, dtype=np.float64), self.a, self.b)
        return 0.5 * (self.b**2 - np.square(x)) / (self.b - self.a)


class Gamma(Distribution):
    """Gamma(shape, rate).  Mostly here as the closed-form law of sums of
    exponentials when building pushforward references."""

    def __init__(self, shape: float, rate: float = 1.0):
        if not (shape > 0.0 and rate > 0.0 and math.isfinite(shape) and math.isfinite(rate)):
            raise ValueError(f"need shape > 0 and rate > 0, got shape={shape}, rate={rate}")
        self.shape = float(shape)
        self.rate = float(rate)
        self.label = f"gamma:{shape:g},{rate:g}"

    def support(self):
        return (0.0, math.inf)

    def cdf(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
        return spec_fn.gammainc(self.shape, self.rate * x)

    def sf(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
        return spec_fn.gammaincc(self.shape, self.rate * x)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        inside = x > 0.0
        xs = np.where(inside, x, 1.0)
        logpdf = (
            self.shape * math.log(self.rate)
            + (self.shape - 1.0) * np.log(xs)
            - self.rate * xs
            - spec_fn.gammaln(self.shape)
        )
        return np.where(inside, np.exp(logpdf), 0.0)

    def quantile(self, p):
        return spec_fn.gammaincinv(self.shape, np.asarray(p, dtype=np.float64)) / self.rate

    def isf(self, q):
        return spec_fn.gammainccinv(self.shape, np.asarray(q, dtype=np.float64)) / self.rate

    def mean(self):
        return self.shape / self.rate

    def _moment_below(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
        m = self.shape / self.rate
        return m * _where_finite(x, lambda t: spec_fn.gammainc(self.shape + 1.0, self.rate * t), 1.0)

    def _moment_above(self, x):
        x = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
        m = self.shape / self.rate
        return m * _where_finite(x, lambda t: spec_fn.gammaincc(self.shape + 1.0, self.rate * t), 0.0)


def conditional_mean(d: Distribution, cell: tuple[float, float]) -> float:
    """Mean of d restricted to [a, b].  Raises ZeroMassCell below mass 1e-15."""
    a, b = cell
    mass = float(d.mass(a, b))
    if mass <= MASS_TOL:
        raise ZeroMassCell(f"cell [{a}, {b}] carries mass {mass!r}")
    m = float(d.partial_expectation(a, b)) / mass
    return min(max(m, a), b)


def conditional_median(d: Distribution, cell: tuple[float, float]) -> float:
    """Median of d restricted to [a, b], via the tail-accurate side of the CDF."""
    a, b = cell
    mass = float(d.mass(a, b))
    if mass <= MASS_TOL:
        raise ZeroMassCell(f"cell [{a}, {b}] carries mass {mass!r}")
    target_f = 0.5 * (float(d.cdf(a)) + float(d.cdf(b)))
    if target_f <= 0.5:
        m = float(d.quantile(target_f))
    else:
        m = float(d.isf(0.5 * (float(d.sf(a)) + float(d.sf(b)))))
    return min(max(m, a), b)


# --- deterministic counter-based sampling ------------------------------------
#
# splitmix64: state_i = seed + (i+1) * GOLDEN, output = finalizer(state_i).
# Sample i is a pure function of (seed, i), so any parallel or out-of-order
# evaluation produces the identical stream.

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_U64_MASK = (1 << 64) - 1


def _mix64(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):  # wrap mod 2^64 is the point
        z = (z ^ (z >> np.uint64(30))) * _MIX_1
        z = (z ^ (z >> np.uint64(27))) * _MIX_2
        return z ^ (z >> np.uint64(31))


def counter_uniforms(count: int, seed: int, offset: int = 0) -> np.ndarray:
    """count uniforms in the open interval (0, 1), indexed offset..offset+count-1."""
    idx = np.arange(offset, offset + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = np.uint64(seed & _U64_MASK) + (idx + np.uint64(1)) * _GOLDEN
    bits53 = _mix64(state) >> np.uint64(11)
    return (bits53.astype(np.float64) + 0.5) * 2.0**-53


def derive_seed(seed: int, index: int) -> int:
    """Replicate seed: seed XOR mix64(index); documented so runs are reconstructible."""
    return int(np.uint64(seed & _U64_MASK) ^ _mix64(np.uint64(index & _U64_MASK)))


def mc_sample_stream(d: Distribution, count: int, seed: int) -> np.ndarray:
    """count i.i.d. samples of d by inverse-CDF transform of the counter stream."""
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    return np.asarray(d.sample(counter_uniforms(count, seed)), dtype=np.float64)
