"""Exception types shared across the package."""


class QuatEigError(Exception):
    """Base class for all errors raised by quatlefteig."""


class DomainError(QuatEigError, ValueError):
    """Input outside an operation's domain (zero inverse, non-pure, non-symplectic...)."""


class NumericalError(QuatEigError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance.

    ``best`` holds the best iterate found and ``residual`` its residual, when
    the failing routine has one to report.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class ConsistencyError(QuatEigError, AssertionError):
    """Two routes that must agree by a theorem disagreed."""
