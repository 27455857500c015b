"""Check 6: linear energy law configuration."""

import numpy as np

from spectral import Grid
from viscwave.diagnostics import linear_energy, linear_energy_rate
from viscwave.models import CheckOutcome
from viscwave.params import ModelParams, Variant, random_wave_state
from viscwave.timestepper import SnapshotEvent, SimConfig, simulate, step

from .check_config import CheckConfig

GRID_N = 64
DT = 0.05
STEPS = 40
PROBE_STEPS = (7, 19, 33)
FD_STEP = 1e-3
RATE_TOLERANCE = 0.01
MONOTONE_SLACK = 1e-13


def run(rng: np.random.Generator) -> CheckOutcome:
    grid = Grid(GRID_N)
    params = ModelParams(delta=0.05, beta=1e-5, epsilon=1.0, variant=Variant.LINEAR)
    init = random_wave_state(grid, rng, amplitude=0.05)
    states = []

    def collect(event) -> None:
        if isinstance(event, SnapshotEvent):
            states.append(event.state)

    simulate(init, params, SimConfig(dt=DT, t_end=STEPS * DT, snapshot_every=1, diagnostics_every=STEPS), collect)

    energies = np.array([linear_energy(s, params) for s in states])
    worst_increase = float(np.max(np.diff(energies) / energies[0]))

    worst_rate = 0.0
    for index in PROBE_STEPS:
        state = states[index]
        forward = linear_energy(step(state, FD_STEP, params), params)
        backward = linear_energy(step(state, -FD_STEP, params), params)
        measured = (forward - backward) / (2.0 * FD_STEP)
        expected = linear_energy_rate(state, params)
        worst_rate = max(worst_rate, abs(measured - expected) / abs(expected))

    return CheckOutcome(
        passed=worst_increase <= MONOTONE_SLACK and worst_rate < RATE_TOLERANCE,
        measured={"max_relative_increase": worst_increase, "rate_relative_error": worst_rate},
        detail=f"E_lin max step increase {worst_increase:.2e} (relative), rate error {worst_rate:.2e}",
    )


CONFIG = CheckConfig(
    check_id=6,
    name="Linear energy law",
    description="E_lin nonincreasing on Linear runs; central difference of E_lin matches the rate within 1%",
    run=run,
    budget_seconds=2.0,
)
