"""Exception hierarchy shared across the package.

Validation problems derive from :class:`ValidationError`, I/O problems from
:class:`IoError`; the CLI maps these to exit codes 1 and 2.
"""


class HypersemError(Exception):
    """Base class for all package errors."""


class ValidationError(HypersemError):
    """Bad inputs, violated preconditions, degenerate configurations."""


class IoError(HypersemError):
    """Filesystem and serialization failures."""


# -- geometry ---------------------------------------------------------------

class ZeroVector(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class SpaceMismatch(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class DegenerateProjection(ValidationError):
    pass


class UnitNormViolation(ValidationError):
    pass


# -- svm --------------------------------------------------------------------

class EmptyDataset(ValidationError):
    pass


class SingleClass(ValidationError):
    pass


# -- oracle -----------------------------------------------------------------

class UnknownAttribute(ValidationError):
    pass


class GramNotRepairable(ValidationError):
    pass


class DimensionTooSmall(ValidationError):
    pass


class NoConvergence(HypersemError):
    """Optimization failed to reach the required objective.

    Carries the final objective value in ``residual``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


# -- pipeline ---------------------------------------------------------------

class KTooLarge(ValidationError):
    pass


class ZeroVariance(ValidationError):
    pass


class QualityBoundaryMissing(ValidationError):
    pass


# -- service ----------------------------------------------------------------

class IoFailure(IoError):
    pass


class MalformedFile(IoError):
    """Unparseable persisted file; ``offset`` is the failing byte when known."""

    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset
