"""Exception types shared across the package."""


class PhaseBellError(Exception):
    """Base class for all package errors."""


class DomainError(PhaseBellError, ValueError):
    """An argument lies outside the supported domain (e.g. a degree guard)."""


class ConfigurationError(PhaseBellError, ValueError):
    """A numerical setting is too coarse for the requested computation."""


class NumericalError(PhaseBellError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance.

    ``estimate`` carries the best available value, ``index`` the failing
    item (root number, series order, ...) when that is meaningful.
    """

    def __init__(self, message, estimate=None, index=None):
        super().__init__(message)
        self.estimate = estimate
        self.index = index


class IntegrationError(NumericalError):
    pass


class TruncationError(NumericalError):
    pass
