"""Check 7: structure of the nonlinearity configuration."""

import numpy as np

from spectral import Grid
from viscwave.model import rhs
from viscwave.models import CheckOutcome
from viscwave.params import ModelParams, Variant, random_wave_state

from .check_config import CheckConfig

GRID_N = 64
STATES = 200
TOLERANCE = 1e-12


def run(rng: np.random.Generator) -> CheckOutcome:
    grid = Grid(GRID_N)
    variants = [
        ModelParams(delta=0.05, beta=1e-3, epsilon=1.0, variant=Variant.SIMPLIFIED),
        ModelParams(delta=0.05, beta=1e-3, epsilon=1.0, alpha1=0.03, alpha2=0.07, variant=Variant.FULL),
    ]
    nonzero_means = 0
    not_real = 0
    worst_scaling = 0.0
    for i in range(STATES):
        params = variants[i % len(variants)]
        state = random_wave_state(grid, rng)
        factor = float(rng.uniform(0.5, 2.0))
        out = rhs(state, params)
        scaled = rhs(state.scaled(factor), params)

        nonzero_means += int(out.coeffs[0] != 0)
        not_real += int(not out.is_real())
        expected = factor**2 * out
        scale = max(1.0, float(np.max(np.abs(expected.coeffs))))
        worst_scaling = max(worst_scaling, scaled.max_abs_difference(expected) / scale)

    return CheckOutcome(
        passed=nonzero_means == 0 and not_real == 0 and worst_scaling < TOLERANCE,
        measured={"nonzero_means": nonzero_means, "not_real": not_real, "scaling_error": worst_scaling},
        detail=f"{STATES} states: {nonzero_means} non-zero means, {not_real} non-real, scaling error {worst_scaling:.2e}",
    )


CONFIG = CheckConfig(
    check_id=7,
    name="Nonlinearity structure",
    description="rhs output mean-zero, real and quadratic rhs(ls) = l^2 rhs(s) on 200 random states",
    run=run,
    budget_seconds=5.0,
)
