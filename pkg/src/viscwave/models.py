"""Request and result models of the verify suite."""

from typing import Any, Literal

from pydantic import BaseModel, Field

DEFAULT_SEED = 1234


class CheckOutcome(BaseModel):
    """What a single check reports back.

    Attributes:
        passed: Whether the measured values met the check's tolerance
        measured: Named measurements (errors, fitted orders, counts)
        detail: One-line human summary
    """
    passed: bool
    measured: dict[str, Any] = Field(default_factory=dict)
    detail: str = ""


class VerifyRequest(BaseModel):
    """Request to run the oracle suite.

    Attributes:
        checks: "all" or the ids of the checks to run
        seed: Seed of the random fields drawn by the checks
        stop_on_failure: Halt after the first failing binding check
    """
    checks: list[int] | Literal["all"] = "all"
    seed: int = DEFAULT_SEED
    stop_on_failure: bool = False


class VerifyResult(BaseModel):
    """Result of a verify run.

    Attributes:
        passed: True when every non-advisory check passed
        detail: Aggregate and per-check metrics
    """
    passed: bool
    detail: dict[str, Any]
