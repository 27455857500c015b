"""Check configuration dataclass."""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from viscwave.models import CheckOutcome

CheckRunner = Callable[[np.random.Generator], CheckOutcome]


@dataclass(frozen=True)
class CheckConfig:
    """Configuration for one verify-suite check.

    Attributes:
        check_id: Numeric identifier (1-10)
        name: Short human-readable name
        description: What is compared against what, and the tolerance
        run: Callable drawing its random inputs from the given generator
        advisory: Failures are reported as warnings and do not fail the suite
        budget_seconds: Expected runtime at desk scale; overruns are logged
    """

    check_id: int
    name: str
    description: str
    run: CheckRunner
    advisory: bool = False
    budget_seconds: float = 5.0

    def __post_init__(self):
        """Validate configuration after initialization."""
        if self.check_id < 1 or self.check_id > 99:
            raise ValueError(f"Invalid check_id: {self.check_id}. Must be 1-99.")
        if not self.name:
            raise ValueError("Invalid name: empty. Must be a non-empty string.")
        if self.budget_seconds <= 0:
            raise ValueError(f"Invalid budget_seconds: {self.budget_seconds}. Must be > 0.")
