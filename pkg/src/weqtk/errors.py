class WeqtkError(Exception):
    """Base class for all library errors."""


class UnsupportedBackend(WeqtkError):
    """The backend cannot perform the requested operation (no enumeration,
    no colimits, or an infinite search space)."""


class SearchBudgetExceeded(WeqtkError):
    """An exhaustive search would exceed the configured budget.  Raised
    instead of silently sampling."""


class DimensionBound(WeqtkError):
    """A simplicial construction would need cells above the requested
    truncation dimension."""


class NotInjective(WeqtkError):
    """Witness construction failed; ``problem`` names the first unfillable
    lifting problem in canonical order."""

    def __init__(self, problem):
        super().__init__(f"object is not injective; first unfillable problem: {problem!r}")
        self.problem = problem


class IncompatibleJ(WeqtkError):
    """Two witness structures are not over the same generating family."""


class NotStabilized(WeqtkError):
    """Algebra extraction was requested from a chain that has not stabilized."""


class StageBoundReached(WeqtkError):
    """The free chain hit the stage bound before stabilizing."""


class ParseError(WeqtkError):
    """Malformed job or certificate payload."""


class VersionMismatch(WeqtkError):
    """Certificate was produced by an incompatible tool version."""
