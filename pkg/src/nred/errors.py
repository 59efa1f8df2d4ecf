"""Exception hierarchy shared by every layer of the workbench."""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class; carries an optional partial report for the CLI."""

    report = None


class OutOfFuel(WorkbenchError):
    """An unbounded search or evaluation exhausted its step budget.

    Never a numeral: callers that see this know nothing about the answer.
    """

    def __init__(self, message: str = "out of fuel", spent: int | None = None):
        super().__init__(message)
        self.spent = spent


class ParseError(WorkbenchError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col = line, col
        super().__init__(f"{message} at line {line}, column {col}")


class TypeCheckError(WorkbenchError):
    def __init__(self, message: str, subterm=None):
        self.subterm = subterm
        if subterm is not None:
            message = f"{message} (in {subterm})"
        super().__init__(message)


class MachineError(WorkbenchError):
    """Malformed oracle-machine program or bad instruction operands."""


class ProviderInvalid(WorkbenchError):
    """A provider's answer was refuted by the consuming reduction."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationFailed(WorkbenchError):
    """A reduction's output failed its independent post-check."""

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class NoWitness(WorkbenchError):
    """A finite search that must succeed on valid inputs came back empty."""


class AntecedentRefuted(WorkbenchError):
    """A sampled point violates the hypothesis of a principle."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class InstanceError(WorkbenchError):
    """Instance file failed schema validation or name resolution."""
