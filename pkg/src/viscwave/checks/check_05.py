"""Check 5: temporal self-convergence of the nonlinear scheme configuration."""

import math

import numpy as np

from spectral import Grid, SpectralField, forward_transform, project_mean_zero
from viscwave.models import CheckOutcome
from viscwave.params import ModelParams, WaveState
from viscwave.timestepper import SimConfig, simulate

from .check_config import CheckConfig

GRID_N = 64
T_END = 1.0
BASE_DT = 0.1
LEVELS = 3
REFERENCE_REFINEMENT = 64
TARGET_ORDER = 2.0
ORDER_TOLERANCE = 0.2


def initial_state(grid: Grid) -> WaveState:
    x = grid.points
    f = project_mean_zero(forward_transform(0.05 * np.cos(x) + 0.02 * np.cos(2 * x), grid))
    return WaveState(f, SpectralField.zeros(grid))


def _distance(a: WaveState, b: WaveState) -> float:
    return max(a.f.max_abs_difference(b.f), a.ft.max_abs_difference(b.ft))


def convergence_orders(params: ModelParams, scheme: str = "midpoint") -> tuple[list[float], list[float]]:
    """Errors at BASE_DT / 2^i against a BASE_DT / 64 reference, and the observed orders."""
    grid = Grid(GRID_N)
    init = initial_state(grid)

    def solve(dt: float) -> WaveState:
        return simulate(init, params, SimConfig(dt=dt, t_end=T_END, scheme=scheme))

    reference = solve(BASE_DT / REFERENCE_REFINEMENT)
    errors = [_distance(solve(BASE_DT / 2**i), reference) for i in range(LEVELS)]
    orders = [math.log2(errors[i] / errors[i + 1]) for i in range(LEVELS - 1)]
    return errors, orders


def run(rng: np.random.Generator) -> CheckOutcome:
    params = ModelParams.small_steepness(delta=0.05)
    errors, orders = convergence_orders(params)
    observed = orders[-1]
    return CheckOutcome(
        passed=abs(observed - TARGET_ORDER) <= ORDER_TOLERANCE,
        measured={"errors": errors, "orders": orders, "order": observed},
        detail=f"observed temporal order {observed:.3f} (errors {', '.join(f'{e:.2e}' for e in errors)})",
    )


CONFIG = CheckConfig(
    check_id=5,
    name="Nonlinear self-convergence",
    description="Simplified run, N=64, t_end=1: temporal order 2.0 +- 0.2 against a dt/64 reference",
    run=run,
    budget_seconds=10.0,
)
