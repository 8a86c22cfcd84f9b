"""Exception types shared across the package."""


class ScbandError(Exception):
    """Base class for all scband errors."""


class DomainError(ScbandError, ValueError):
    """Evaluation point outside the unit interval (or mapped domain)."""


class DesignSingular(ScbandError):
    """Pooled Gram matrix is not numerically positive definite.

    Usually means the basis dimension is too large for the observed
    design points.
    """


class NotPSD(ScbandError):
    """Matrix handed to the PSD square root has a genuinely negative eigenvalue."""


class DegenerateScale(ScbandError):
    """The pointwise standard-deviation scale vanished at an evaluation point."""


class AllDegenerate(ScbandError):
    """Every grid point has a degenerate scale; no band can be formed."""


class NoFeasibleKnots(ScbandError):
    """Every candidate basis dimension failed to fit."""


class EmptySupport(ScbandError):
    """A sampling-count scheme produced an empty support set."""


class ParseError(ScbandError):
    """Malformed input row; carries the offending 1-based row index."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class EmptyDataset(ScbandError):
    """Input file contained no usable observations."""
