"""OracleVerifier - runs the built-in analytic and oracle checks."""

import time
from typing import Any

import numpy as np
from loguru import logger

from viscwave.checks import get_all_checks, get_check_config
from viscwave.metrics import CheckMetrics, MultiCheckMetricsTracker
from viscwave.models import CheckOutcome, VerifyRequest, VerifyResult
from viscwave.timestepper import propagator_table


class OracleVerifier:
    """Runs a selection of registry checks and aggregates their outcomes."""

    def __init__(self):
        """Initialize OracleVerifier."""
        self._metrics = MultiCheckMetricsTracker()

    def validate_request(self, request: VerifyRequest) -> tuple[bool, str]:
        """Check that every requested id exists.

        Returns:
            Tuple of (is_valid, error_message)
        """
        if request.checks == "all":
            return True, "ok"
        unknown = sorted(set(request.checks) - set(get_all_checks()))
        if unknown:
            return False, f"Unknown checks: {unknown}. Available checks: {get_all_checks()}"
        if not request.checks:
            return False, "No checks selected"
        return True, "ok"

    def _parse_checks(self, checks_config: Any) -> list[int]:
        """Parse the checks selection into a list of check IDs.

        Args:
            checks_config: "all", a single int, or a list of ints

        Raises:
            ValueError: If the selection is malformed
        """
        if checks_config == "all":
            return get_all_checks()
        elif isinstance(checks_config, int):
            return [checks_config]
        elif isinstance(checks_config, list):
            return sorted(set(checks_config))
        else:
            raise ValueError(
                f"Invalid checks config: {checks_config}. "
                f"Must be 'all', an int, or a list of ints."
            )

    def run(self, req: VerifyRequest) -> VerifyResult:
        """Run the requested checks.

        Args:
            req: Selection, seed and stop policy

        Returns:
            VerifyResult, passed when no binding check failed
        """
        valid, message = self.validate_request(req)
        if not valid:
            raise ValueError(message)

        check_ids = self._parse_checks(req.checks)
        logger.info(f"Running checks: {check_ids} (seed={req.seed})")

        try:
            self._metrics.start()
            for check_id in check_ids:
                metrics = self._run_single_check(check_id, req.seed)
                if req.stop_on_failure and metrics.status == "fail":
                    logger.info("stop_on_failure=true, halting verification")
                    break

            aggregate = self._metrics.calculate_aggregate_metrics()
            passed = aggregate["checks_failed"] == 0 and aggregate["checks_attempted"] > 0
            logger.info(
                f"Verification complete: {aggregate['checks_passed']}/{aggregate['checks_attempted']} passed, "
                f"{aggregate['checks_warned']} warned, {aggregate['checks_failed']} failed"
            )
            return VerifyResult(passed=passed, detail=aggregate)
        finally:
            propagator_table.cache_clear()

    def _run_single_check(self, check_id: int, seed: int) -> CheckMetrics:
        """Run one check with its own generator so results do not depend on the selection."""
        config = get_check_config(check_id)
        rng = np.random.default_rng([seed, check_id])
        logger.info(f"Check {check_id}: {config.name}")

        start = time.time()
        outcome: CheckOutcome | None = None
        error: str | None = None
        try:
            outcome = config.run(rng)
        except Exception as e:
            logger.error(f"Check {check_id} raised: {e}")
            error = f"{type(e).__name__}: {e}"
        finally:
            elapsed = time.time() - start
            metrics = CheckMetrics(
                check_id=check_id,
                name=config.name,
                passed=outcome.passed if outcome else False,
                advisory=config.advisory,
                time_seconds=round(elapsed, 3),
                measured=outcome.measured if outcome else {},
                detail=outcome.detail if outcome else "",
                error_message=error,
            )
            self._metrics.record_check_result(metrics)

        if elapsed > config.budget_seconds:
            logger.warning(f"Check {check_id} took {elapsed:.2f}s, budget {config.budget_seconds:g}s")
        if metrics.status == "warn":
            logger.warning(f"Advisory check {check_id} did not pass: {metrics.detail}")
        return metrics


def verify(checks: list[int] | None = None, seed: int | None = None) -> VerifyResult:
    """Convenience wrapper: run the given checks (all by default)."""
    request = VerifyRequest(checks=checks or "all", **({"seed": seed} if seed is not None else {}))
    return OracleVerifier().run(request)
