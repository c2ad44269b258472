"""Exception types raised across the package."""


class QRotorError(Exception):
    """Base class for all package errors."""


class InvalidInputError(QRotorError, ValueError):
    """Malformed arguments: wrong lengths, out-of-range indices, bad files."""


class DegenerateInputError(InvalidInputError):
    """Input that has no meaningful answer, e.g. an all-zero coefficient vector."""


class ConvergenceError(QRotorError):
    """The inverse angle solve exhausted its restarts.

    The best attempt is kept on the exception so callers can still report it.
    """

    def __init__(self, message, *, residual, restarts, iterations=0, angles=None):
        super().__init__(message)
        self.residual = residual
        self.restarts = restarts
        self.iterations = iterations
        self.angles = angles


class InvariantViolation(QRotorError):
    """An internal cross-check (oracle comparison, unitarity) failed."""
