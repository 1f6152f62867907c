"""
Exceptions raised by the selfaffine library.

Each error carries the exit code the command line reports for it.
"""

from . import ids


class SelfAffineError(Exception):
    exit_code = ids.EXIT_VALIDATION


class ValidationError(SelfAffineError):
    """Input rejected by a precondition."""


class NonFinite(ValidationError):
    pass


class ConvergenceFailure(ValidationError):
    pass


class BadRank(ValidationError):
    pass


class Singular(ValidationError):
    pass


class OutOfRangeS(ValidationError):
    pass


class NotContracting(ValidationError):
    pass


class NotAWitness(ValidationError):
    pass


class HypothesisViolation(ValidationError):
    pass


class UsageError(ValidationError):
    """Command line rejected by the argument parser."""


class ConfigParse(ValidationError):
    def __init__(self, message, path=None, field=None, line=None):
        self.path = path
        self.field = field
        self.line = line
        self.detail = message
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = ", ".join(where) + ": " if where else ""
        super().__init__(f"{prefix}{message}")


class Overflow(SelfAffineError):
    """Enumeration exceeds the configured word budget."""

    exit_code = ids.EXIT_OVERFLOW
