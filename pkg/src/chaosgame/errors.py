"""Exception hierarchy shared across the package.

Each class maps to a CLI exit code (see cli.py): validation problems
exit 2, exceeded caps exit 3, broken internal invariants exit 4.
"""


class ChaosGameError(Exception):
    """Base class for all package errors."""


class ValidationError(ChaosGameError):
    """Bad input: invalid config, non-contractive map, symbol out of range."""


class CapExceededError(ChaosGameError):
    """A configured budget (orbit cap, point budget, coverage cap) was hit."""


class InternalInvariantError(ChaosGameError):
    """Something the math guarantees did not hold; a bug, not a user error."""
