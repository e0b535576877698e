"""Exception types used across the toolkit.

Invalid arguments raise plain ValueError; these cover the numerical
failure modes that deserve their own handling (CLI exit code 3).
"""


class FitFailedError(RuntimeError):
    """A nonlinear fit did not converge or the input is degenerate."""


class NormalizationError(RuntimeError):
    """A requested ratio/normalization is undefined (zero denominator)."""
