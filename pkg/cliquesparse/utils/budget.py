"""
Search budgets for exhaustive procedures.

A budget counts expansion steps and aborts the search with a
CapacityError once its limit is reached.
"""

from dataclasses import dataclass, field
from typing import Optional

from ..core.config import resolve_cap
from ..core.exceptions import CapacityError


@dataclass
class SearchBudget:
    """Step counter for a single exhaustive search."""
    limit: int
    cap_name: str = 'search_node_budget'
    steps: int = field(default=0, init=False)

    @classmethod
    def from_config(cls, limit: Optional[int] = None, cap_name: str = 'search_node_budget') -> 'SearchBudget':
        """
        Create a budget from the configured cap.

        Args:
            limit: Explicit limit overriding the configured value
            cap_name: Cap looked up when no limit is given
        """
        return cls(limit=resolve_cap(cap_name, limit), cap_name=cap_name)

    def tick(self, amount: int = 1) -> None:
        """
        Consume budget.

        Raises:
            CapacityError: when the limit is exceeded
        """
        self.steps += amount
        if self.steps > self.limit:
            raise CapacityError(self.cap_name, self.limit, self.steps)

    @property
    def remaining(self) -> int:
        """Number of steps left."""
        return max(0, self.limit - self.steps)

    def reset(self) -> None:
        """Reset the step counter."""
        self.steps = 0
