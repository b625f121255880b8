"""Exception types raised by the library.

Everything derives from DcquantError so callers (the CLI in particular) can
distinguish "the computation told us no" from a genuine bug.
"""


class DcquantError(Exception):
    """Base class for all library errors."""


class ZeroMassCell(DcquantError):
    """A conditional statistic was requested on a cell of (numerically) zero mass."""


class NegativeSupport(DcquantError):
    """Geometric-mean split on a cell extending below zero."""


class NonFiniteMean(DcquantError):
    """The law has no finite first moment, so mean-based machinery is undefined."""


class DepthTooLarge(DcquantError):
    """Requested recursion depth exceeds the hard cap (2^n atoms must stay addressable)."""


class UnsupportedRule(DcquantError):
    """The operation has no implementation for the requested split rule."""


class NoConvergence(DcquantError):
    """An iterative solver exhausted its sweep budget above tolerance."""


class DivergentHalfDensity(DcquantError):
    """The integral of sqrt(density) does not converge; half-density constructions unavailable."""


class DivergentIntegral(DcquantError):
    """A tail-checked quadrature failed to settle under cutoff doubling."""


class UnboundedBelow(DcquantError):
    """The split-sequence envelope bound needs a support bounded below."""


class PushforwardTooLarge(DcquantError):
    """A non-compressed product measure would exceed the intermediate atom budget."""
