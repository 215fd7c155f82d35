"""
Work budgets for exhaustive searches and brute-force oracles.
A budget counts units of work (assignments, search nodes, labeled candidates)
and fails loudly instead of truncating.
"""
import threading
import logging

from .errors import BudgetExceededError

logger = logging.getLogger(__name__)


class WorkBudget:
    """
    Thread-safe counter of consumed work units.
    Raises BudgetExceededError as soon as consumption passes the allowance.
    """

    def __init__(self, name: str, max_units: int):
        """
        Initialize work budget.

        Args:
            name: Budget name reported in errors (matches the config key)
            max_units: Maximum number of units that may be consumed
        """
        self.name = name
        self.max_units = max_units
        self.used = 0
        self.lock = threading.Lock()

        logger.debug(f"Work budget '{name}' initialized: {max_units:,} units")

    def require(self, units: int) -> None:
        """Check up front that a job of the given size fits, without consuming"""
        if units > self.max_units:
            logger.error(f"Budget '{self.name}' too small for {units:,} units (allowed {self.max_units:,})")
            raise BudgetExceededError(self.name, units, self.max_units)

    def consume(self, units: int = 1) -> None:
        """Record consumed units, failing once the allowance is passed"""
        with self.lock:
            self.used += units
            if self.used > self.max_units:
                logger.error(f"Budget '{self.name}' exhausted after {self.used:,} units")
                raise BudgetExceededError(self.name, self.used, self.max_units)
