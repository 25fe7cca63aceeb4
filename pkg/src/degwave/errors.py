"""Error types shared across the package.

Solver and validation failures are distinguished from usage errors so the
command-line layer can map them to exit codes (computational failure -> 1,
bad configuration/usage -> 2).
"""


class DegwaveError(Exception):
    """Base class for computational failures raised by this package."""


class TruncationError(DegwaveError):
    """An orbit or profile failed to reach its required end state within budget."""


class MonotonicityError(DegwaveError):
    """A profile expected to be strictly monotone was not (integrator misconfiguration)."""


class NoConvergence(DegwaveError):
    """Newton iteration stagnated.  Carries the final residual for diagnostics."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InvalidSpeed(DegwaveError):
    """Requested wave speed lies below the proven lower bound for these parameters."""


class NoWaveBelowMinimalSpeed(DegwaveError):
    """No sharp-interface wave exists below the limit-problem minimal speed."""


class DerivativeFloorError(DegwaveError):
    """All grid nodes fell below the derivative floor; a ratio functional is undefined."""


class WindowTooShort(DegwaveError):
    """A fitting window contains too few nodes for a meaningful estimate."""


class StabilityViolation(DegwaveError):
    """Time stepping produced values outside the invariant region (blow-up)."""


class ConfigError(DegwaveError):
    """Simulation or study configuration is inconsistent or violates a stability bound."""


class FileFormatError(DegwaveError):
    """A profile or configuration file does not match the documented format."""


class InternalConsistencyError(DegwaveError):
    """A proven identity or ordering failed numerically; signals a bug, not a result."""
