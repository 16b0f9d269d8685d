"""Exception types raised across the package.

Kept in one module so callers can catch the package base class without
caring which subsystem failed.
"""


class PburaError(Exception):
    """Base class for all package errors."""


class NonConvergence(PburaError):
    """An iteration failed to converge.

    Carries ``best`` (the best figure of merit achieved, e.g. the smallest
    equioscillation deviation) so callers can decide whether a partially
    converged result would have been acceptable.
    """

    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


class DegenerateDegree(PburaError, ValueError):
    """Degree outside the supported range (k = 0 is rejected)."""


class InterlacingViolated(PburaError, ValueError):
    """Zeros and poles of a rational minimax object do not interlace."""


class SchemaError(PburaError, ValueError):
    """A coefficient-table file does not follow the documented CSV schema."""


class InvariantFailure(PburaError):
    """A certified invariant of a loaded or constructed object is violated."""


class NotConverged(NonConvergence):
    """An iterative linear solve exceeded its iteration cap."""


class NonPositivePivot(PburaError):
    """Direct factorization hit a nonpositive pivot; the matrix is not SPD."""


class DimensionTooLarge(PburaError, ValueError):
    """Problem size exceeds the supported range of a dense code path."""


class NonpositiveCoefficient(PburaError, ValueError):
    """A diffusion coefficient is not strictly positive."""


class GridParity(PburaError, ValueError):
    """Grid resolution incompatible with the requested domain geometry."""


class SpectrumViolation(PburaError, ValueError):
    """A spectral rescaling value exceeds the smallest eigenvalue."""


class AlphaOutOfRange(PburaError, ValueError):
    """Exponent outside the admissible range of an operation."""


class LengthMismatch(PburaError, ValueError):
    """Vector lengths disagree."""


class ZeroReference(PburaError, ValueError):
    """A relative norm was requested against a zero reference."""


class ConfigError(PburaError, ValueError):
    """An experiment configuration is invalid."""
