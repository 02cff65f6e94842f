"""
Exception hierarchy shared by the library and the command-line front end.
The CLI maps each family to its own exit status and message.
"""


class SyncwordError(Exception):
    """Base class for all errors raised by syncword."""

    error_code = "error"


class UsageError(SyncwordError, ValueError):
    """An argument is out of range or otherwise unusable."""

    error_code = "usage"


class ParseError(UsageError):
    """Malformed DFA text."""

    error_code = "parse"


class DomainError(SyncwordError):
    """The request has no answer for this automaton (e.g. it is not synchronizing)."""

    error_code = "domain"


class CapacityError(SyncwordError):
    """The input is beyond a documented size limit."""

    error_code = "capacity"


class CatalogError(UsageError):
    """Unknown catalog name or a fixture that fails validation."""

    error_code = "catalog"


class FixtureMissingError(CatalogError):
    """A catalog fixture has not been generated yet."""

    error_code = "fixture_missing"
