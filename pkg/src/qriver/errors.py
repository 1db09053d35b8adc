"""Exception hierarchy shared by all qriver modules."""


class QriverError(Exception):
    """Base class for every error raised by qriver."""


class ParseError(QriverError, ValueError):
    """Malformed textual input (form literal, surd, rational, CF)."""


class ClassificationError(QriverError, ValueError):
    """The form is not indefinite-anisotropic where that is required."""


class DegenerateError(QriverError, ValueError):
    """Degenerate geometric input: coincident points, collinear angles, short polylines."""


class OutOfDomain(QriverError, ValueError):
    """Argument outside the domain an operation is defined on."""


class BudgetExceeded(QriverError, RuntimeError):
    """An iteration budget ran out (period search, reduction loop, oracle radius)."""


class InsufficientOverlap(QriverError, ValueError):
    """Windows too short to support a meaningful alignment."""


class InvariantViolation(QriverError, AssertionError):
    """A mathematical invariant failed at runtime. Always a bug."""
