"""Exception types raised across the package."""


class SNormedError(Exception):
    """Base class for all errors raised by snormed."""


class InvalidDimensionError(SNormedError, ValueError):
    pass


class DimensionMismatchError(SNormedError, ValueError):
    pass


class KindMismatchError(SNormedError, TypeError):
    pass


class UnknownStructureError(SNormedError, KeyError):
    pass


class NotAGNormError(SNormedError, ValueError):
    """Raised when a structure offered as a G-norm fails the sampled NG check.

    The failing report is attached as ``report`` so callers can inspect the
    witness.
    """

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class TraceError(SNormedError, RuntimeError):
    def __init__(self, message, angle=None):
        super().__init__(message)
        self.angle = angle


class MembershipError(SNormedError, ValueError):
    pass


class ExcludedPairError(SNormedError, ValueError):
    pass


class DomainError(SNormedError, ValueError):
    pass


class NoConvergenceError(SNormedError, RuntimeError):
    """Fixed-point search ran out of budget; ``best`` and ``residual`` hold
    the best candidate seen."""

    def __init__(self, message, best, residual):
        super().__init__(message)
        self.best = best
        self.residual = residual
