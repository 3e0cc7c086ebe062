"""Shared outcome types and budget handling."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

DEFAULT_BUDGET = 2_000_000
ORACLE_LIMIT = 2**20


def default_budget() -> int:
    """Node budget for the search solvers; ``NYTHARD_BUDGET`` overrides it."""
    raw = os.environ.get("NYTHARD_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


class BudgetExhausted(RuntimeError):
    """A search ran out of its node budget before reaching a verdict.

    Never a synonym for "unsolvable": callers must treat it as "unknown".
    """

    def __init__(self, budget: int, what: str = "search"):
        super().__init__(f"{what} exhausted its budget of {budget} nodes")
        self.budget = budget


class _Counter:
    __slots__ = ("left", "budget", "what")

    def __init__(self, budget: int | None, what: str):
        self.budget = default_budget() if budget is None else budget
        self.left = self.budget
        self.what = what

    def tick(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise BudgetExhausted(self.budget, self.what)


@dataclass(frozen=True)
class Verdict:
    """Result of a verifier: truthy iff no violations were found."""

    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    @classmethod
    def of(cls, violations) -> "Verdict":
        return cls(tuple(violations))
