"""Exception hierarchy.

Everything raised on purpose derives from FoldcfError so the CLI can map
library failures to exit code 2 in one place.
"""


class FoldcfError(Exception):
    """Base class for all library errors."""


class ZeroDenominatorError(FoldcfError):
    """Rational constructed with denominator zero."""


class CFParseError(FoldcfError):
    """Continued fraction text does not match the grammar."""


class MalformedWordError(FoldcfError):
    """Word contains negative entries, adjacent zeros, or a dangling zero."""


class EmptyWordError(FoldcfError):
    """Operation needs at least one partial quotient past the integer part."""


class InvalidZError(FoldcfError):
    """Fold parameter z must be a positive integer."""


class SpecError(FoldcfError):
    """Series specification is incomplete, inconsistent, or unparseable."""


class DivisibilityViolationError(FoldcfError):
    """A recurrence step that must divide exactly did not."""


class DigitBudgetExceededError(FoldcfError):
    """Next value would exceed the configured decimal-digit cap."""


class StrongPropertyViolationError(FoldcfError):
    """x_n^2 does not divide x_{n+1}; carries the offending index."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"x_{index}^2 does not divide x_{index + 1}")


class PrecisionExhaustedError(FoldcfError):
    """Ceiling could not be certified within the precision ladder."""


class CaseOutOfRangeError(FoldcfError):
    """No length prediction exists for this case/index combination."""


class OracleMismatchError(FoldcfError):
    """Folded continued fraction disagrees with the exact partial sum."""


class UnknownExampleError(FoldcfError):
    """Builtin example name not in the catalog."""
