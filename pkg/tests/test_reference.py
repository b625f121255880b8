"""Baseline quantizers, error envelopes, and rate estimation."""

import math

import numpy as np
import pytest

from dcquant import (
    DivergentHalfDensity,
    Exponential,
    Gaussian,
    HeavyTailed,
    Pareto,
    SplitRule,
    Uniform,
    UnboundedBelow,
    UnsupportedRule,
    asympt_compress_discrete,
    asymptotically_optimal_quantizer,
    envelope_bound,
    optimal_quantizer,
    quantize,
    stationarity_residual,
    tail_rate_estimate,
    w1_continuous_discrete,
    zador_constant,
)
from dcquant.measures import DiscreteMeasure

MEAN, MEDIAN = SplitRule.MEAN, SplitRule.MEDIAN


# --- Zador constant ---------------------------------------------------------


def test_zador_closed_forms():
    assert zador_constant(Exponential(1.0)) == pytest.approx(1.0, rel=1e-9)
    assert zador_constant(Gaussian(0.0, 1.0)) == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-9)
    assert zador_constant(Uniform(0.0, 1.0)) == pytest.approx(0.25, rel=1e-12)
    assert zador_constant(Pareto(2.0, 1.0)) == pytest.approx(2.0, rel=1e-9)
    assert zador_constant(Pareto(3.0, 1.0)) == pytest.approx(0.75, rel=1e-9)


def test_zador_diverges_for_log_tail():
    with pytest.raises(DivergentHalfDensity):
        zador_constant(HeavyTailed())


# --- tail envelopes ----------------------------------------------------------


def test_exponential_mean_envelope_closed_form():
    d = Exponential(1.0)
    for n in range(1, 13):
        r = envelope_bound(d, MEAN, n)
        assert np.allclose(r.omegas, np.arange(n + 2), atol=1e-10)
        tail = 2.0 * math.exp(-(n + 1.0))
        geom = 2.0**-n * (math.e - 1.0) / (math.e - 2.0) * (1.0 - (2.0 / math.e) ** n)
        assert r.tail_lower == pytest.approx(tail, rel=1e-11)
        assert r.split_upper == pytest.approx(geom + tail, rel=1e-11)
        # the cruder closed form with tail term 2 e^{-n} sits above
        assert r.split_upper <= geom + 2.0 * math.exp(-float(n)) + 1e-15
        assert r.zador_lower == pytest.approx(zador_constant(d) / 2.0**n, rel=1e-9)


def test_exponential_median_envelope_closed_form():
    d = Exponential(1.0)
    ln2 = math.log(2.0)
    for n in range(1, 13):
        r = envelope_bound(d, MEDIAN, n)
        assert np.allclose(r.omegas, np.arange(n + 2) * ln2, atol=1e-10)
        assert r.tail_lower == pytest.approx(ln2 * 2.0**-n, rel=1e-11)
        assert r.split_upper == pytest.approx((n + 1.0) * ln2 * 2.0**-n, rel=1e-11)


@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0])
def test_pareto_omega_sequences(alpha):
    d = Pareto(alpha, 1.0)
    r = envelope_bound(d, MEAN, 6)
    assert r.omegas[0] == 1.0
    assert np.allclose(r.omegas[1:], (alpha / (alpha - 1.0)) ** np.arange(1, 8), rtol=1e-10)

    r = envelope_bound(d, MEDIAN, 6)
    assert r.omegas[0] == 1.0
    assert np.allclose(r.omegas[1:], 2.0 ** (np.arange(1, 8) / alpha), rtol=1e-10)


@pytest.mark.parametrize(
    "d", [Exponential(1.0), Pareto(2.0, 1.0), Pareto(3.0, 1.0), HeavyTailed()], ids=lambda d: d.label
)
@pytest.mark.parametrize("rule", [MEAN, MEDIAN], ids=lambda r: r.value)
def test_envelope_sandwiches_measured_error(d, rule):
    for n in (0, 2, 5, 8):
        r = envelope_bound(d, rule, n)
        w1 = w1_continuous_discrete(d, quantize(d, rule, n))
        assert r.tail_lower <= w1 + 1e-12
        assert w1 <= r.split_upper + 1e-12
        assert r.tail_lower <= r.split_upper + 1e-15
        assert np.all(np.diff(r.omegas) >= -1e-12)


def test_envelope_requires_lower_bounded_support():
    with pytest.raises(UnboundedBelow):
        envelope_bound(Gaussian(0.0, 1.0), MEAN, 3)
    with pytest.raises(UnsupportedRule):
        envelope_bound(Exponential(1.0), SplitRule.GEOMETRIC_MEAN, 3)


def test_heavytailed_envelope_has_no_zador_floor():
    r = envelope_bound(HeavyTailed(), MEAN, 4)
    assert r.zador_lower is None
    assert r.split_upper > r.tail_lower > 0.0


# --- asymptotically optimal ---------------------------------------------------


def test_asympt_exponential_closed_form():
    m = asymptotically_optimal_quantizer(Exponential(1.0), 2)
    want = [-2.0 * math.log(0.75), -2.0 * math.log(0.25)]
    assert m.positions == pytest.approx(want, rel=1e-9)
    mid = 0.5 * (m.positions[0] + m.positions[1])
    p1 = 1.0 - math.exp(-mid)
    assert m.weights == pytest.approx([p1, 1.0 - p1], rel=1e-9)


def test_asympt_gaussian_is_variance_doubled_quantile_grid():
    d = Gaussian(0.0, 1.0)
    n = 8
    m = asymptotically_optimal_quantizer(d, n)
    levels = (2.0 * np.arange(1, n + 1) - 1.0) / (2.0 * n)
    want = np.asarray(Gaussian(0.0, math.sqrt(2.0)).quantile(levels), dtype=float)
    assert np.allclose(m.positions, want, rtol=1e-7, atol=1e-8)


def test_asympt_pareto_closed_form():
    m = asymptotically_optimal_quantizer(Pareto(2.0, 1.0), 2)
    assert m.positions == pytest.approx([16.0 / 9.0, 16.0], rel=1e-8)


def test_asympt_positions_strictly_inside_support():
    for d in (Exponential(1.0), Pareto(2.0, 1.0), Gaussian(0.0, 1.0), Uniform(0.0, 1.0)):
        lo, hi = d.support()
        m = asymptotically_optimal_quantizer(d, 16)
        assert np.all(np.diff(m.positions) > 0)
        assert m.positions[0] > lo and (math.isinf(hi) or m.positions[-1] < hi)
        assert abs(float(m.weights.sum()) - 1.0) <= 1e-12


def test_asympt_rejects_heavytailed():
    with pytest.raises(DivergentHalfDensity):
        asymptotically_optimal_quantizer(HeavyTailed(), 8)


# --- optimal ------------------------------------------------------------------


def test_optimal_uniform_closed_form():
    m = optimal_quantizer(Uniform(0.0, 1.0), 2)
    assert m.positions == pytest.approx([0.25, 0.75], abs=1e-10)
    assert m.weights == pytest.approx([0.5, 0.5], abs=1e-10)

    n = 5
    m = optimal_quantizer(Uniform(0.0, 1.0), n)
    assert m.positions == pytest.approx(((2.0 * np.arange(1, n + 1) - 1.0) / (2 * n)).tolist(), abs=1e-10)


def test_optimal_single_atom_is_median():
    assert optimal_quantizer(Exponential(1.0), 1).positions[0] == pytest.approx(math.log(2.0), abs=1e-10)
    assert optimal_quantizer(Gaussian(0.0, 1.0), 1).positions[0] == pytest.approx(0.0, abs=1e-10)


def test_optimal_exponential_two_atoms_closed_form():
    # solving the two-point stationarity system by hand gives survival values
    # 2/3 and 1/6, i.e. atoms ln(3/2) and ln 6 with weights 2/3 and 1/3
    m = optimal_quantizer(Exponential(1.0), 2)
    assert m.positions == pytest.approx([math.log(1.5), math.log(6.0)], rel=1e-9)
    assert m.weights == pytest.approx([2.0 / 3.0, 1.0 / 3.0], rel=1e-9)


def test_optimal_beats_grid_search():
    d = Exponential(1.0)
    m = optimal_quantizer(d, 2)
    best = math.inf
    for x1 in np.linspace(0.05, 1.2, 70):
        for x2 in np.linspace(1.25, 3.5, 70):
            cand = DiscreteMeasure(
                np.array([x1, x2]),
                np.array([float(d.cdf(0.5 * (x1 + x2))), float(d.sf(0.5 * (x1 + x2)))]),
            )
            best = min(best, w1_continuous_discrete(d, cand))
    assert w1_continuous_discrete(d, m) <= best + 1e-9


@pytest.mark.parametrize("d", [Gaussian(0.0, 1.0), Exponential(1.0), Pareto(2.0, 1.0)], ids=lambda d: d.label)
def test_optimal_stationarity(d, n=8):
    m = optimal_quantizer(d, n)
    assert stationarity_residual(d, m) <= 1e-10
    mids = 0.5 * (m.positions[:-1] + m.positions[1:])
    f = np.concatenate(([0.0], np.asarray(d.cdf(mids), dtype=float), [1.0]))
    levels = 0.5 * (f[:-1] + f[1:])
    want = np.asarray(d.quantile(levels), dtype=float)
    assert np.allclose(m.positions, want, rtol=1e-9, atol=1e-9)


def test_optimal_improves_on_split_at_equal_size(n=3):
    for d in (Gaussian(0.0, 1.0), Exponential(1.0), Pareto(2.0, 1.0)):
        opt = w1_continuous_discrete(d, optimal_quantizer(d, 2**n))
        mean_split = w1_continuous_discrete(d, quantize(d, MEAN, n))
        asympt = w1_continuous_discrete(d, asymptotically_optimal_quantizer(d, 2**n))
        assert opt <= mean_split + 1e-9
        assert opt <= asympt + 1e-9


def test_optimal_heavytailed_converges():
    d = HeavyTailed()
    m = optimal_quantizer(d, 4)
    assert stationarity_residual(d, m) <= 1e-10
    assert np.all(np.diff(m.positions) > 0)


# --- rates and discrete compression baseline -----------------------------------


def test_uniform_tail_rate_is_exact():
    got = tail_rate_estimate(Uniform(0.0, 1.0), MEAN, 10)
    assert abs(got - math.log(0.5)) <= 1e-6


def test_asympt_compress_discrete_basics():
    rng = np.random.default_rng(5)
    pos = np.sort(rng.uniform(0.0, 10.0, size=40))
    w = rng.uniform(0.1, 1.0, size=40)
    m = DiscreteMeasure(pos, w / w.sum())
    out = asympt_compress_discrete(m, 8)
    assert out.n_atoms == 8
    assert abs(float(out.weights.sum()) - 1.0) <= 1e-12
    assert out.positions[0] >= m.positions[0] - 1e-12
    assert out.positions[-1] <= m.positions[-1] + 1e-12

    small = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.5]))
    again = asympt_compress_discrete(small, 8)
    assert np.array_equal(again.positions, small.positions)
