"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all aislekit errors."""


class RingMismatchError(WorkbenchError):
    """Operands live over different rings."""


class ShapeMismatchError(WorkbenchError):
    """Matrix or complex shapes are incompatible."""


class BudgetExceededError(WorkbenchError):
    """A configurable resource budget (S-pairs, power search) ran out."""


class InvalidComplexError(WorkbenchError):
    """A chain complex violates d∘d = 0 or its shape bookkeeping."""


class InvalidMapError(WorkbenchError):
    """A chain map fails the degreewise commutation check."""


class PreconditionError(WorkbenchError):
    """An operation was called outside its documented preconditions."""


class EngineError(WorkbenchError):
    """An internal invariant failed; indicates a bug, not bad input."""


class ParseError(WorkbenchError):
    """Malformed workbench input text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "%s (line %s, column %s)" % (message, line, column)
        super().__init__(message)


class UnresolvedReferenceError(WorkbenchError):
    """A workbench file refers to a name that is not defined."""
