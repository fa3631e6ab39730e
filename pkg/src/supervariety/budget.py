"""Resource budgets: enumeration counts and complex sizes fail loudly."""

from __future__ import annotations

import os

from .errors import BudgetError, InputError

ENV_VAR = "SUPERVARIETY_BUDGET"
DEFAULT_BUDGET = 10**7

# rows*cols ceiling for densifying a matrix during elimination
DENSE_CELL_LIMIT = 1 << 26


def get_budget() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"{ENV_VAR} must be a decimal integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError(f"{ENV_VAR} must be positive, got {value}")
    return value


def check_budget(kind: str, needed: int, limit: int | None = None) -> None:
    limit = get_budget() if limit is None else limit
    if needed > limit:
        raise BudgetError(
            f"{kind} needs {needed} > budget {limit}; "
            f"raise {ENV_VAR} or shrink the request"
        )
