"""Check 9: energy and dissipation functionals configuration."""

import math

import numpy as np

from spectral import Grid, SpectralField
from spectral.oracles import quadrature_sobolev_norm
from viscwave.diagnostics import dissipation, energy
from viscwave.models import CheckOutcome
from viscwave.params import ModelParams, WaveState, random_wave_state

from .check_config import CheckConfig

GRID_N = 64
STATES = 20
TOLERANCE = 1e-10


def quadrature_energy(s: WaveState, p: ModelParams) -> float:
    return (
        quadrature_sobolev_norm(s.f, 4.0) ** 2
        + p.beta * quadrature_sobolev_norm(s.f, 5.0) ** 2
        + p.delta**2 * quadrature_sobolev_norm(s.f, 5.5) ** 2
        + quadrature_sobolev_norm(s.ft, 3.5) ** 2
    )


def quadrature_dissipation(s: WaveState, p: ModelParams) -> float:
    return 2.0 * p.delta * quadrature_sobolev_norm(s.ft, 4.5) ** 2


def _cosine(grid: Grid) -> SpectralField:
    coeffs = np.zeros(grid.N, dtype=np.complex128)
    coeffs[grid.index_of(1)] = coeffs[grid.index_of(-1)] = 0.5
    return SpectralField(grid, coeffs)


def run(rng: np.random.Generator) -> CheckOutcome:
    grid = Grid(GRID_N)
    params = ModelParams(delta=0.05, beta=1e-3, epsilon=1.0)
    worst = 0.0
    for _ in range(STATES):
        state = random_wave_state(grid, rng)
        e_inst, _ = energy(state, params)
        worst = max(
            worst,
            abs(e_inst - quadrature_energy(state, params)) / e_inst,
            abs(dissipation(state, params) - quadrature_dissipation(state, params)) / dissipation(state, params),
        )

    cos_x = _cosine(grid)
    zero = SpectralField.zeros(grid)
    closed_form = max(
        abs(energy(WaveState(cos_x, zero), ModelParams(delta=1.0, beta=0.0))[0] - 2.0 * math.pi),
        abs(dissipation(WaveState(zero, cos_x), ModelParams(delta=0.5, beta=0.0)) - math.pi),
    )

    return CheckOutcome(
        passed=worst < TOLERANCE and closed_form < 1e-13,
        measured={"quadrature_relative_error": worst, "closed_form_error": closed_form},
        detail=f"energy/dissipation vs quadrature {worst:.2e}, single-mode closed forms {closed_form:.2e}",
    )


CONFIG = CheckConfig(
    check_id=9,
    name="Energy functionals",
    description="energy() and dissipation() vs trapezoid quadrature within 1e-10; cos x closed forms",
    run=run,
    budget_seconds=2.0,
)
