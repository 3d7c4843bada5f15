"""Exception hierarchy shared across the package.

Split matters to the CLI: ParseError/SchemaError map to exit code 2
(malformed input), PreconditionError and subclasses to exit code 3
(well-formed input outside an operation's domain).
"""


class PlanecrossError(Exception):
    """Base class for all package errors."""


class RingMismatchError(PlanecrossError, ValueError):
    """Operands live in different polynomial rings."""


class ParseError(PlanecrossError, ValueError):
    """Expression text rejected by the grammar; carries line and column."""

    def __init__(self, message, line, col):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class SchemaError(PlanecrossError, ValueError):
    """JSON document rejected by a schema; carries a JSON pointer."""

    def __init__(self, message, pointer):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer


class PreconditionError(PlanecrossError, ValueError):
    """Input is well-formed but outside the operation's stated domain."""


class NonDiscreteIntersectionError(PreconditionError):
    """The pair's common zero set has positive dimension."""


class IrrationalPointError(PreconditionError):
    """Counted multiplicities over the rational points miss part of the variety."""


class ReductionConditionError(PreconditionError):
    """Operation requires the reduced normal form and a condition flag is false."""


class NormalizationError(PreconditionError):
    """No chain in the implemented step set normalizes the pair."""


class GenerationError(PreconditionError):
    """Instance generator exhausted its rejection budget."""


class InconsistentSystemError(PreconditionError):
    """Bounded cofactor system has no solution at the requested degree bounds."""


class InvariantViolation(PlanecrossError, RuntimeError):
    """A postcondition the mathematics guarantees failed; indicates a bug."""
