"""Run-level bookkeeping: diagnostics time series and verify-suite results."""

import time
from dataclasses import asdict, dataclass, field
from typing import Any

from loguru import logger

from viscwave.diagnostics import DiagnosticsRecord, diagnostics_record
from viscwave.params import ModelParams, WaveState

GROWTH_FACTOR = 4.0


class DiagnosticsTracker:
    """Tracks energy, dissipation and norms along one simulation."""

    def __init__(self, params: ModelParams):
        """Initialize diagnostics tracker.

        Args:
            params: Model parameters entering the energy and dissipation
        """
        self.params = params
        self.records: list[DiagnosticsRecord] = []
        self.start_time: float = 0
        self.end_time: float | None = None
        self.initial_energy: float = 0.0
        self.e_max: float = 0.0
        self.exceedance_time: float | None = None
        self.dissipation_integral: float = 0.0
        self.steps: int = 0

    def start(self, initial: WaveState) -> DiagnosticsRecord:
        """Begin tracking and record the initial state."""
        self.start_time = time.time()
        self.end_time = None
        self.records = []
        self.e_max = 0.0
        self.exceedance_time = None
        self.dissipation_integral = 0.0
        self.steps = 0
        record = self.record(initial)
        self.initial_energy = record.e_inst
        logger.info(f"Diagnostics tracking started: E(0)={self.initial_energy:.6e}")
        return record

    def record(self, state: WaveState) -> DiagnosticsRecord:
        """Sample diagnostics at the state's time.

        Args:
            state: Current wave state

        Returns:
            The new record (running max already folded in)
        """
        record = diagnostics_record(state, self.params, self.e_max)
        if self.records:
            previous = self.records[-1]
            self.dissipation_integral += 0.5 * (record.t - previous.t) * (
                record.dissipation + previous.dissipation
            )
        self.e_max = record.e_max
        self.records.append(record)

        if (
            self.exceedance_time is None
            and len(self.records) > 1
            and record.e_max > GROWTH_FACTOR * self.initial_energy
        ):
            self.exceedance_time = record.t
            logger.warning(
                f"E(t) exceeded {GROWTH_FACTOR:g} E(0) at t={record.t:.6g}: "
                f"{record.e_max:.6e} > {GROWTH_FACTOR * self.initial_energy:.6e}"
            )
        logger.debug(f"Diagnostics at t={record.t:.6g}: e={record.e_inst:.6e}, D={record.dissipation:.6e}")
        return record

    def increment_step(self) -> None:
        self.steps += 1

    def mark_completed(self) -> None:
        self.end_time = time.time()
        logger.info(f"Run completed after {self.steps} steps")

    def calculate_summary(self) -> dict:
        """Summary of the tracked run.

        Returns:
            Dictionary with energy growth, dissipation and timing
        """
        if not self.records:
            return {"records": 0}
        last = self.records[-1]
        ratio = last.e_max / self.initial_energy if self.initial_energy > 0 else None
        return {
            "records": len(self.records),
            "steps": self.steps,
            "t_final": last.t,
            "initial_energy": self.initial_energy,
            "e_max": last.e_max,
            "e_max_ratio": ratio,
            "growth_bound_held": self.exceedance_time is None,
            "exceedance_time": self.exceedance_time,
            "dissipation_integral": self.dissipation_integral,
            "final_linear_energy": last.e_linear,
            "wall_seconds": round((self.end_time or time.time()) - self.start_time, 3),
        }


@dataclass
class CheckMetrics:
    """Outcome of one verify-suite check."""

    check_id: int
    name: str
    passed: bool
    advisory: bool
    time_seconds: float
    measured: dict[str, Any] = field(default_factory=dict)
    detail: str = ""
    error_message: str | None = None

    @property
    def status(self) -> str:
        if self.passed:
            return "pass"
        return "warn" if self.advisory else "fail"


class MultiCheckMetricsTracker:
    """Tracks and aggregates results across the verify-suite checks."""

    def __init__(self):
        """Initialize multi-check tracker."""
        self.check_metrics: list[CheckMetrics] = []
        self.start_time: float = 0

    def start(self) -> None:
        """Begin tracking for a new verify run."""
        self.check_metrics = []
        self.start_time = time.time()
        logger.info("Verify tracking started")

    def record_check_result(self, metrics: CheckMetrics) -> None:
        """Record results for a finished check."""
        self.check_metrics.append(metrics)
        logger.info(
            f"Recorded check {metrics.check_id} ({metrics.name}): "
            f"status={metrics.status}, time={metrics.time_seconds:.2f}s"
        )

    def calculate_aggregate_metrics(self) -> dict:
        """Aggregate pass/fail counts and per-check rows.

        Returns:
            Dictionary with aggregate and per-check metrics
        """
        if not self.check_metrics:
            return {
                "checks_attempted": 0,
                "checks_passed": 0,
                "checks_failed": 0,
                "checks_warned": 0,
                "success_rate": 0.0,
                "total_time_seconds": 0.0,
                "per_check": [],
            }

        attempted = len(self.check_metrics)
        passed = sum(1 for cm in self.check_metrics if cm.passed)
        warned = sum(1 for cm in self.check_metrics if cm.status == "warn")
        failed = attempted - passed - warned

        return {
            "checks_attempted": attempted,
            "checks_passed": passed,
            "checks_failed": failed,
            "checks_warned": warned,
            "success_rate": round(passed / attempted, 3),
            "total_time_seconds": round(sum(cm.time_seconds for cm in self.check_metrics), 2),
            "per_check": [{**asdict(cm), "status": cm.status} for cm in self.check_metrics],
        }
