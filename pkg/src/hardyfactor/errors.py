"""Exception hierarchy shared by all hardyfactor modules."""


class HardyFactorError(Exception):
    """Base class for every error raised by this package."""


class KindMismatchError(HardyFactorError, TypeError):
    """Exact and floating polynomials were mixed in one operation."""


class DomainError(HardyFactorError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class EvaluationSingularityError(DomainError):
    """Evaluation was requested at an atom or at a pole of a rational factor."""


class TrivialCombinationError(DomainError):
    """All combination coefficients are zero."""


class LinearDependenceError(DomainError):
    """The input functions are linearly dependent (their Wronskian vanishes)."""


class NoDeepZeroError(HardyFactorError):
    """The Wronskian matrix is numerically nonsingular at the requested point."""

    def __init__(self, message, gap):
        super().__init__(message)
        self.gap = gap


class ContourTooCloseError(HardyFactorError):
    """A zero sits too close to the integration contour."""


class ZeroBudgetError(HardyFactorError):
    """More zeros were found than the caller allowed."""


class QuadratureError(HardyFactorError):
    """Quadrature did not converge; carries the last two estimates."""

    def __init__(self, message, last_values):
        super().__init__(message)
        self.last_values = tuple(last_values)


class InconsistentZeroInventoryError(HardyFactorError):
    """The supplied zero list disagrees with the argument-principle count."""


class RadialZeroError(HardyFactorError):
    """The function vanished on the ray used for atom-mass estimation."""


class ConfigError(HardyFactorError):
    """Scenario configuration failed validation."""

    def __init__(self, message, pointer="/"):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer
