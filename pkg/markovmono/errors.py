"""Exception hierarchy shared by the library and the command line."""


class MarkovMonoError(Exception):
    """Base class for every error raised by markovmono."""


class DomainError(MarkovMonoError, ValueError):
    """An input lies outside the domain of the requested operation."""


class MissingCapError(DomainError):
    """Enumeration along a line with nonnegative slope needs an x cap."""


class RegimeError(DomainError):
    """The slope is not in the regime the operation requires."""


class FamilyCoincidenceError(DomainError):
    """The line is itself a member of the family it should be bracketed by."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class MarkovEquationError(MarkovMonoError, ArithmeticError):
    """A constructed triple does not satisfy x^2 + y^2 + z^2 = 3xyz."""


class OracleError(MarkovMonoError, RuntimeError):
    """Two independent computations disagree; this is a bug, not bad input."""


class SearchExhaustedError(MarkovMonoError):
    """A bounded search ran out of candidates."""


class UnknownSuiteError(MarkovMonoError, KeyError):
    """No verification suite is registered under the given name."""

    def __str__(self):
        return str(self.args[0]) if self.args else 'unknown suite'
