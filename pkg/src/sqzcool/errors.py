"""Exception hierarchy shared across the package.

Every failure mode that callers are expected to branch on gets its own
class.  The CLI maps these onto process exit codes; library users catch
them directly.
"""

from __future__ import annotations

__all__ = [
    "SqzCoolError",
    "InvalidParameterError",
    "DegenerateParameterError",
    "SingularityError",
    "NearThresholdError",
    "InfeasibleSuppressionError",
    "UnstableSystemError",
    "HeatingDivergenceError",
    "EmptyFeasibleSetError",
    "ConvergenceError",
    "NumericalError",
    "BistabilityWarning",
]


class SqzCoolError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(SqzCoolError, ValueError):
    """A parameter or argument violates its documented domain."""


class DegenerateParameterError(InvalidParameterError):
    """A parameter combination makes the requested expression undefined."""


class SingularityError(SqzCoolError):
    """An analytic expression was evaluated exactly at a pole."""


class NearThresholdError(SingularityError):
    """Parametric-gain denominator fell below the hard floor.

    Raised instead of returning a spectrum value that would be pure
    amplified round-off.
    """


class InfeasibleSuppressionError(SqzCoolError):
    """Complete heating-rate suppression has no real squeezing solution.

    Carries ``rhs_modulus``, the tanh argument that came out >= 1.
    """

    def __init__(self, message: str, rhs_modulus: float = float("nan")):
        super().__init__(message)
        self.rhs_modulus = rhs_modulus


class UnstableSystemError(SqzCoolError):
    """Drift matrix has an eigenvalue with non-negative real part.

    ``max_real_eig`` holds the offending margin so callers can report
    how far past the stability boundary the point sits.
    """

    def __init__(self, message: str, max_real_eig: float = float("nan")):
        super().__init__(message)
        self.max_real_eig = max_real_eig


class HeatingDivergenceError(SqzCoolError):
    """Rate-equation phonon balance diverges: gamma + gamma_opt <= 0."""


class EmptyFeasibleSetError(SqzCoolError):
    """No stable, feasible point exists anywhere in the search space."""


class ConvergenceError(SqzCoolError):
    """An iterative solver ran out of iterations.

    ``residual`` holds the last relative residual reached.
    """

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class NumericalError(SqzCoolError):
    """A solve finished but its result failed a sanity bound."""


class BistabilityWarning(UserWarning):
    """Two starting guesses converged to distinct classical roots."""
