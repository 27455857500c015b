"""Check 4: exact linear step configuration."""

import numpy as np

from spectral import Grid, SpectralField
from spectral.oracles import damped_oscillator
from viscwave.model import linear_symbol
from viscwave.models import CheckOutcome
from viscwave.params import ModelParams, Variant, WaveState
from viscwave.timestepper import step

from .check_config import CheckConfig

GRID_N = 32
STEPS = (1e-3, 1e-1, 1.0)
WAVENUMBERS = (1, 2, 3, 5, 8)
TOLERANCE = 1e-13


def _single_mode(grid: Grid, k: int, value: complex) -> SpectralField:
    coeffs = np.zeros(grid.N, dtype=np.complex128)
    coeffs[grid.index_of(k)] = value
    coeffs[grid.index_of(-k)] = np.conj(value)
    return SpectralField(grid, coeffs)


def run(rng: np.random.Generator) -> CheckOutcome:
    grid = Grid(GRID_N)
    params = ModelParams(delta=0.1, beta=0.01, epsilon=1.0, variant=Variant.LINEAR)
    worst = 0.0
    for k in WAVENUMBERS:
        f0 = complex(*(0.5 * rng.standard_normal(2)))
        v0 = complex(*(0.5 * rng.standard_normal(2)))
        state = WaveState(_single_mode(grid, k, f0), _single_mode(grid, k, v0))
        damping, stiffness = linear_symbol(k, params)
        for dt in STEPS:
            out = step(state, dt, params)
            f_exact, v_exact = damped_oscillator(damping, stiffness, dt, f0, v0)
            worst = max(
                worst,
                abs(out.f.coefficient(k) - f_exact),
                abs(out.ft.coefficient(k) - v_exact),
                abs(out.f.coefficient(-k) - np.conj(f_exact)),
            )

    return CheckOutcome(
        passed=worst < TOLERANCE,
        measured={"max_error": worst, "dt": list(STEPS)},
        detail=f"one linear step vs closed-form oscillator: max error {worst:.2e}",
    )


CONFIG = CheckConfig(
    check_id=4,
    name="Linear exactness",
    description="one Linear step on a single mode matches the damped-oscillator closed form to 1e-13",
    run=run,
    budget_seconds=1.0,
)
