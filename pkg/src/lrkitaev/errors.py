"""Exception types shared across the package.

ValueError subclasses signal bad inputs (CLI exit code 1), RuntimeError
subclasses signal failures during an otherwise valid computation (exit
code 2).
"""


class DomainError(ValueError):
    """Argument outside the supported parameter domain."""


class SizeError(ValueError):
    """System or subsystem size outside the supported range."""


class CriticalPointError(ValueError):
    """Quantity undefined at (or numerically too close to) a critical point."""


class GaplessError(RuntimeError):
    """Spectrum has a (near-)zero mode where a gapped one is required."""


class ConvergenceError(RuntimeError):
    """An iterative or extrapolated evaluation failed to converge."""


class NonQuantizedError(RuntimeError):
    """Winding accumulation did not settle on an integer."""


class IllConditionedFitError(RuntimeError):
    """Design matrix of a fit is numerically singular."""
