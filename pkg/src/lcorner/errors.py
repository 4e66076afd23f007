"""Exception hierarchy.

Class names double as the error-variant names reported by the CLI.
Input errors subclass :class:`ValueError`; numerical failures subclass
:class:`ArithmeticError`.
"""


class LCurveError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message: str = "", lam: float | None = None):
        if lam is not None:
            message = f"{message} (lambda={lam!r})"
        super().__init__(message)
        self.lam = lam


class InputError(LCurveError, ValueError):
    """Malformed or out-of-domain input."""


class NumericalError(LCurveError, ArithmeticError):
    """Numerical breakdown in a solve or in the search."""


class MalformedInput(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NonFiniteInput(InputError):
    pass


class NegativeLambda(InputError):
    pass


class EmptyGrid(InputError):
    pass


class NonMonotoneGrid(InputError):
    pass


class InvalidInterval(InputError):
    pass


class InvalidConfig(InputError):
    pass


class InvalidSize(InputError):
    pass


class TooFewPoints(InputError):
    pass


class SingularAtZero(NumericalError):
    pass


class DegenerateNorm(NumericalError):
    pass


class DegeneratePoints(NumericalError):
    pass


class NoPositiveCurvature(NumericalError):
    pass


class MaxIterationsExceeded(NumericalError):
    pass


class IntervalCollapse(NumericalError):
    pass
