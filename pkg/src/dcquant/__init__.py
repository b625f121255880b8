"""Divide-and-conquer quantization of one-dimensional probability laws.

Quantize a continuous distribution into 2^n atoms by recursively splitting its
support at a conditional statistic (mean, median, or geometric mean), measure
the exact Wasserstein-1 error, compare against optimal and asymptotically
optimal quantizers and against Monte Carlo sampling, and push quantized laws
through arithmetic with fixed-size recompression.
"""

from .arith import ArithOp, convolve, compress, fold, reference_pushforward
from .errors import (
    DcquantError,
    DepthTooLarge,
    DivergentHalfDensity,
    DivergentIntegral,
    NegativeSupport,
    NoConvergence,
    NonFiniteMean,
    PushforwardTooLarge,
    UnboundedBelow,
    UnsupportedRule,
    ZeroMassCell,
)
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
    conditional_mean,
    conditional_median,
    counter_uniforms,
    derive_seed,
    merge_sorted_atoms,
)
from .metrics import w1_continuous_discrete, w1_discrete, w1_via_cells
from .montecarlo import (
    McReport,
    asymptotic_constant,
    empirical_measure,
    empirical_w1,
    equivalent_mc_count,
    mc_report,
)
from .quantizer import Cell, quantize, quantize_discrete, quantize_with_cells
from .reference import (
    BoundReport,
    asympt_compress_discrete,
    asymptotically_optimal_quantizer,
    envelope_bound,
    half_density_total,
    optimal_quantizer,
    stationarity_residual,
    tail_rate_estimate,
    zador_constant,
)
from .splitrules import SplitRule, split

__all__ = [
    "ArithOp",
    "Bimodal",
    "BoundReport",
    "Cell",
    "DcquantError",
    "DepthTooLarge",
    "DiscreteMeasure",
    "Distribution",
    "DivergentHalfDensity",
    "DivergentIntegral",
    "Exponential",
    "Gamma",
    "Gaussian",
    "HeavyTailed",
    "McReport",
    "NegativeSupport",
    "NoConvergence",
    "NonFiniteMean",
    "Pareto",
    "PushforwardTooLarge",
    "SplitRule",
    "UnboundedBelow",
    "Uniform",
    "UnsupportedRule",
    "ZeroMassCell",
    "asympt_compress_discrete",
    "asymptotic_constant",
    "asymptotically_optimal_quantizer",
    "compress",
    "conditional_mean",
    "conditional_median",
    "convolve",
    "counter_uniforms",
    "derive_seed",
    "empirical_measure",
    "empirical_w1",
    "envelope_bound",
    "equivalent_mc_count",
    "fold",
    "half_density_total",
    "mc_report",
    "merge_sorted_atoms",
    "optimal_quantizer",
    "quantize",
    "quantize_discrete",
    "quantize_with_cells",
    "reference_pushforward",
    "split",
    "stationarity_residual",
    "tail_rate_estimate",
    "w1_continuous_discrete",
    "w1_discrete",
    "w1_via_cells",
    "zador_constant",
]
