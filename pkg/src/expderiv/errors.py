"""Exception types shared across the package."""


class ExpDerivError(Exception):
    """Base class for every contract violation raised by this package."""


class PoleError(ExpDerivError, ValueError):
    """Evaluation requested at (or across) the pole x = 0."""


class DomainError(ExpDerivError, ValueError):
    """Argument outside the validity region of the requested operation."""


class UnsupportedOrderError(ExpDerivError, ValueError):
    """Derivative order outside the supported binary64 evaluation range."""


class SingularParameterError(ExpDerivError, ValueError):
    """Parameter combination that makes the target function singular."""


class DivergentSeriesError(ExpDerivError, ValueError):
    """Series or integral diverges for the requested argument."""


class ConvergenceError(ExpDerivError, RuntimeError):
    """Tolerance not reached within the configured work budget.

    ``best`` carries the best estimate obtained before giving up, when one
    exists (a float or a result object, depending on the caller).
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class UnstableLimitError(ExpDerivError, RuntimeError):
    """Limit-extrapolation sequence failed its consistency guard."""
