from dataclasses import dataclass

from ..components.errors import ValidationError


@dataclass
class Outcome:
    """Subcommand result: JSON payload, optional table, and report metadata."""

    result: dict
    frame: object = None
    level: int = None
    tolerance: float = None


def require_kronecker(system, command):
    """The base tuple and permutation of a Kronecker system, or a validation error."""
    if system.base is None or system.iota is None:
        raise ValidationError(f"'{command}' needs a Kronecker system (base_matrices and permutation)")
    return system.base, system.iota
