"""Check 10: energy growth report on small data configuration (advisory)."""

import numpy as np

from spectral import Grid, SpectralField, forward_transform, project_mean_zero, random_mean_zero_field
from viscwave.metrics import GROWTH_FACTOR
from viscwave.models import CheckOutcome
from viscwave.params import ModelParams, WaveState
from viscwave.timestepper import Simulation, SimConfig

from .check_config import CheckConfig

GRID_N = 64
DT = 0.02
T_END = 1.0
DELTAS = (0.05, 0.1)
AMPLITUDE = 1e-2


def _initial_states(grid: Grid, rng: np.random.Generator) -> dict[str, WaveState]:
    x = grid.points
    zero = SpectralField.zeros(grid)
    single = project_mean_zero(forward_transform(AMPLITUDE * np.cos(x), grid))
    pair = project_mean_zero(forward_transform(0.5 * AMPLITUDE * (np.cos(x) + np.cos(2 * x)), grid))
    rough = random_mean_zero_field(grid, rng)
    rough = (AMPLITUDE / float(np.max(np.abs(rough.coeffs)))) * rough
    return {
        "cos x": WaveState(single, zero),
        "cos x + cos 2x": WaveState(pair, zero),
        "random": WaveState(rough, zero),
    }


def run(rng: np.random.Generator) -> CheckOutcome:
    grid = Grid(GRID_N)
    cfg = SimConfig(dt=DT, t_end=T_END, snapshot_every=1000, diagnostics_every=1)
    worst_ratio = 0.0
    exceeded = []
    for delta in DELTAS:
        params = ModelParams.small_steepness(delta=delta)
        for label, init in _initial_states(grid, rng).items():
            simulation = Simulation(params, cfg)
            simulation.run(init)
            summary = simulation.tracker.calculate_summary()
            worst_ratio = max(worst_ratio, summary["e_max_ratio"])
            if not summary["growth_bound_held"]:
                exceeded.append(f"{label} (delta={delta}, t={summary['exceedance_time']:.3g})")

    return CheckOutcome(
        passed=not exceeded,
        measured={"max_ratio": worst_ratio, "exceeded": exceeded},
        detail=(
            f"max E(t)/E(0) = {worst_ratio:.4f}"
            + (f"; exceeded {GROWTH_FACTOR:g} E(0): {', '.join(exceeded)}" if exceeded else "")
        ),
    )


CONFIG = CheckConfig(
    check_id=10,
    name="Energy growth report",
    description="small-amplitude Simplified runs keep E(t) <= 4 E(0) up to t=1 (report only)",
    run=run,
    advisory=True,
    budget_seconds=10.0,
)
