"""
Exception hierarchy for ordlab.

Answers such as "unknown" or "not equivalent" are values, never exceptions.
These classes cover contract violations, malformed input and exhausted budgets.
"""


class OrdlabError(Exception):
    """Base class for every ordlab error."""

    exit_code = 2


class BaseMismatchError(OrdlabError, ValueError):
    """Values built over different bases n were mixed."""


class WordSyntaxError(OrdlabError, ValueError):
    """A group word does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ExponentError(OrdlabError, ValueError):
    """An exponent is outside Z[1/n], or a fractional exponent was put on b."""


class UnsupportedRepresentationError(OrdlabError, TypeError):
    """The operation is not defined for this base-point representation."""


class NoFixedPointError(OrdlabError, ValueError):
    """The element acts as a translation (s = 0) and has no unique fixed point."""


class ConeTypeError(OrdlabError, ValueError):
    """A cone tag was paired with an incompatible base point."""


class InconsistentOracleError(OrdlabError, ValueError):
    """A membership oracle gave answers no positive cone can give."""


class InvalidWitnessError(OrdlabError, ValueError):
    """A tail witness does not produce an integer residual."""


class InsufficientPointsError(OrdlabError, ValueError):
    """Every supplied point is fixed by a non-identity element."""


class BudgetExhaustedError(OrdlabError, RuntimeError):
    """A digit stream ran out of budget before the question was settled."""

    exit_code = 3


class UndecidedComparisonError(BudgetExhaustedError):
    """Two elements could not be ordered within the digit budget."""


class PropertyViolation(OrdlabError, AssertionError):
    """An invariant check found a counterexample."""

    exit_code = 1


def exit_code_for(error: BaseException) -> int:
    """CLI exit code for an exception raised by a command."""
    if isinstance(error, OrdlabError):
        return error.exit_code
    if isinstance(error, (ValueError, TypeError, KeyError)):
        return 2
    return 1
