"""Three-valued verdicts for bounded searches.

A bounded search must never report a bare negative: an answer is YES with a
verified witness, NO with a certificate (stated in `reason`), or
NO_WITNESS_WITHIN_BOUND when the search space was exhausted without either.
Verdicts are truthy exactly when they are YES.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Kind(enum.Enum):
    YES = "yes"
    NO = "no"
    NO_WITNESS_WITHIN_BOUND = "no-witness-within-bound"


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    witness: Any = None
    reason: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.kind is Kind.YES

    @property
    def is_no(self) -> bool:
        return self.kind is Kind.NO

    @property
    def is_bounded(self) -> bool:
        return self.kind is Kind.NO_WITNESS_WITHIN_BOUND

    def describe(self) -> str:
        if self.kind is Kind.YES:
            return f"yes ({self.reason})" if self.reason else "yes"
        if self.kind is Kind.NO:
            return f"no ({self.reason})" if self.reason else "no"
        return "no witness within bound"


def yes(witness: Any = None, reason: str = "", **extra) -> Verdict:
    return Verdict(Kind.YES, witness, reason, dict(extra))


def no(reason: str, **extra) -> Verdict:
    return Verdict(Kind.NO, None, reason, dict(extra))


def bounded(reason: str = "", **extra) -> Verdict:
    return Verdict(Kind.NO_WITNESS_WITHIN_BOUND, None, reason, dict(extra))


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {required} candidates, budget is {budget}")
        self.required = required
        self.budget = budget
