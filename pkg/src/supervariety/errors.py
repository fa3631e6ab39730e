"""Exception hierarchy shared by every subsystem.

The CLI maps these onto process exit codes, so raising the right class is
part of the public contract: InputError -> 2, BudgetError -> 3, and an
InternalConsistencyError is a loud abort (never caught and downgraded).
"""

from __future__ import annotations


class SupervarietyError(Exception):
    """Base class for all package errors."""


class InputError(SupervarietyError):
    """Malformed or inconsistent user input (files, flags, preconditions)."""


class PreconditionError(InputError):
    """An operation's mathematical precondition fails for the given data."""


class BudgetError(SupervarietyError):
    """A computation would exceed the configured enumeration/size budget.

    Raised instead of silently truncating; the message names the bound.
    """


class InternalConsistencyError(SupervarietyError):
    """A built object violates an identity it is required to satisfy.

    Reserved for d-squared style failures that indicate a bug, not bad input.
    """
