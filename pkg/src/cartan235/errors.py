"""Exception types shared across the package."""


class Cartan235Error(Exception):
    """Base class for all package errors."""


class ParseError(Cartan235Error):
    """Malformed expression text.

    Attributes:
        position: 0-based column of the offending token (or end of input).
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position})")
        self.position = position


class ArityError(ParseError):
    """A function call with the wrong number of arguments."""


class DomainError(Cartan235Error):
    """Evaluation left the domain of an operation (division by zero,
    square root of a negative number, zero to a negative power)."""


class ExactnessError(Cartan235Error):
    """Exact rational evaluation hit an operation without a rational value."""


class DimensionMismatch(Cartan235Error):
    """Operands live on charts of different dimensions."""


class DegenerateFrame(Cartan235Error):
    """The two spanning fields are linearly dependent at the queried point."""


class NotAbelian(Cartan235Error):
    """An operation requiring an abelian coefficient algebra got a
    non-abelian one."""


class ModelMismatch(Cartan235Error):
    """The connection form's algebra does not match the requested group
    model of a suspension."""


class UnknownBuiltin(Cartan235Error):
    """No built-in connection form with that name."""


class InvalidStructureConstants(Cartan235Error):
    """Structure constants violate antisymmetry or the Jacobi identity."""


class NumericalFailure(Cartan235Error):
    """A numerical routine could not certify its own result."""


class CriterionFailure(Cartan235Error):
    """A precondition expressed as a pointwise criterion failed."""


class IncompleteData(Cartan235Error):
    """A decision routine is missing a required input field."""


class InconsistentInput(Cartan235Error):
    """Supplied invariants contradict each other."""


class ConfigError(Cartan235Error):
    """A run configuration failed validation."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
