"""
Evaluation Budget
=================
A shared counter for exhaustive searches. Work is charged in whole units
(profile evaluations, candidate checks, search nodes) before it is done, so
the point at which a budget runs out does not depend on worker count.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from config import EVAL_BUDGET
from prefcore.errors import BudgetExceeded


@dataclass
class Budget:
    limit: int = EVAL_BUDGET
    spent: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        if self.limit <= 0:
            raise ValueError(f"budget must be positive, got {self.limit}")

    @property
    def remaining(self) -> int:
        return max(self.limit - self.spent, 0)

    def charge(self, units: int, stage: str) -> None:
        """Spend `units`; raise BudgetExceeded once the limit is passed. Safe across threads."""
        with self._lock:
            self.spent += int(units)
            spent = self.spent
        if spent > self.limit:
            raise BudgetExceeded(stage, spent, self.limit)

    def fits(self, units: int) -> bool:
        return self.spent + int(units) <= self.limit


def ensure_budget(budget: Budget | int | None) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(limit=int(budget))
