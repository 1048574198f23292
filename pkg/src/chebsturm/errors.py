"""Exception hierarchy shared by all modules; the CLI maps each class to an exit code."""
from __future__ import annotations


class ChebSturmError(Exception):
    """Base class for library errors."""


class InputError(ChebSturmError, ValueError):
    """Malformed or out-of-range input (CLI exit status 2)."""


class NumericalError(ChebSturmError, ArithmeticError):
    """A numerical tolerance or post-condition was not met (CLI exit status 3)."""


class BudgetExceeded(ChebSturmError):
    """A combinatorial sweep would exceed its configured budget."""


class NotChebyshevSystem(ChebSturmError):
    """The function system lacks the property an algorithm requires.

    ``witness`` holds the offending point subset when one is known.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionFailed(InputError):
    """A theorem hypothesis was checked and found false (CLI exit status 1).

    ``report`` carries the evidence, e.g. a Krein-property report.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
