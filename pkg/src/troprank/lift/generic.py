"""Seeded source of generic nonzero constants with a shared retry budget."""

from __future__ import annotations

import random

from ..errors import RetryBudgetExhausted

DEFAULT_RETRIES = 1000


class Generic:
    """Draws small nonzero integers; the range widens as retries accumulate.

    ``spent`` counts redraw events against ``budget``; exhausting it raises
    :class:`RetryBudgetExhausted`.
    """

    def __init__(self, seed=0, budget: int = DEFAULT_RETRIES):
        self.seed = seed
        self.rng = random.Random(seed)
        self.budget = budget
        self.spent = 0

    @property
    def radius(self) -> int:
        return 3 + self.spent // 4

    def const(self) -> int:
        r = self.radius
        v = self.rng.randint(1, r)
        return v if self.rng.random() < 0.5 else -v

    def vector(self, n: int) -> list[int]:
        return [self.const() for _ in range(n)]

    def retry(self, what: str = "draw") -> None:
        self.spent += 1
        if self.spent > self.budget:
            raise RetryBudgetExhausted(f"retry budget of {self.budget} exhausted during {what}")

    @property
    def remaining(self) -> int:
        return max(0, self.budget - self.spent)

    def fork(self, tag) -> Generic:
        """Independent deterministic stream sharing this budget."""
        child = Generic(f"{self.seed}/{tag}", self.budget)
        child.spent = self.spent
        return child

    def join(self, child: Generic) -> None:
        self.spent = max(self.spent, child.spent)
