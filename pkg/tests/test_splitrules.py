"""Split rules: the cell statistics the recursion pivots on."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcquant import (
    Exponential,
    Gaussian,
    NegativeSupport,
    SplitRule,
    Uniform,
    ZeroMassCell,
    split,
)

from oracles import CATALOG, POSITIVE_CATALOG

RULES = [SplitRule.MEAN, SplitRule.MEDIAN, SplitRule.GEOMETRIC_MEAN]


def test_c_factors():
    assert SplitRule.MEAN.c_factor == 0.5
    assert SplitRule.MEDIAN.c_factor == 1.0
    assert SplitRule.GEOMETRIC_MEAN.c_factor is None


def test_from_name_spellings():
    assert SplitRule.from_name("mean") is SplitRule.MEAN
    assert SplitRule.from_name("MEDIAN") is SplitRule.MEDIAN
    assert SplitRule.from_name("geomean") is SplitRule.GEOMETRIC_MEAN
    with pytest.raises(ValueError):
        SplitRule.from_name("mode")


def test_split_examples():
    assert split(SplitRule.MEAN, Exponential(1.0), (0.0, math.inf)) == pytest.approx(1.0, abs=1e-12)
    assert split(SplitRule.MEDIAN, Uniform(0.0, 1.0), (0.0, 0.5)) == pytest.approx(0.25, abs=1e-12)
    # log-moment of Uniform(1, e) over its support integrates to 1/(e-1)
    got = split(SplitRule.GEOMETRIC_MEAN, Uniform(1.0, math.e), (1.0, math.e))
    assert got == pytest.approx(math.exp(1.0 / (math.e - 1.0)), abs=1e-9)


def test_split_errors():
    with pytest.raises(ZeroMassCell):
        split(SplitRule.MEAN, Uniform(0.0, 1.0), (2.0, 3.0))
    with pytest.raises(NegativeSupport):
        split(SplitRule.GEOMETRIC_MEAN, Gaussian(0.0, 1.0), (-1.0, 1.0))


def test_symmetric_cell_mean_equals_median():
    d = Gaussian(0.0, 1.0)
    for cell in ((-math.inf, math.inf), (-2.0, 2.0), (-0.5, 0.5)):
        a = split(SplitRule.MEAN, d, cell)
        b = split(SplitRule.MEDIAN, d, cell)
        assert abs(a) <= 1e-10 and abs(b) <= 1e-10


@given(
    d=st.sampled_from(CATALOG),
    rule=st.sampled_from([SplitRule.MEAN, SplitRule.MEDIAN]),
    p1=st.floats(min_value=0.02, max_value=0.95),
    width=st.floats(min_value=0.01, max_value=0.9),
)
@settings(max_examples=150)
def test_split_lands_inside_cell(d, rule, p1, width):
    p2 = min(p1 + width, 0.999)
    a, b = float(d.quantile(p1)), float(d.quantile(p2))
    if not a < b:
        return
    s = split(rule, d, (a, b))
    assert a <= s <= b


@given(
    d=st.sampled_from(POSITIVE_CATALOG),
    p1=st.floats(min_value=0.05, max_value=0.9),
    width=st.floats(min_value=0.05, max_value=0.5),
)
@settings(max_examples=60, deadline=None)
def test_geomean_inside_cell_and_below_mean(d, p1, width):
    p2 = min(p1 + width, 0.99)
    a, b = float(d.quantile(p1)), float(d.quantile(p2))
    if not a < b:
        return
    g = split(SplitRule.GEOMETRIC_MEAN, d, (a, b))
    m = split(SplitRule.MEAN, d, (a, b))
    assert a <= g <= b
    assert g <= m + 1e-9  # arithmetic-geometric mean inequality
