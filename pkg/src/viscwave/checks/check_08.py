"""Check 8: full vs simplified model consistency configuration."""

import numpy as np

from spectral import Grid, commutator_dxx, commutator_hilbert, derivative, lambda_pow
from viscwave.model import nonlinear_rhs_full, nonlinear_rhs_simplified
from viscwave.models import CheckOutcome
from viscwave.params import ModelParams, Variant, random_wave_state

from .check_config import CheckConfig

GRID_N = 64
STATES = 50
TOLERANCE = 1e-12


def dropped_terms(f, p: ModelParams):
    """eps (delta^2 dx [dx^2, f] Lambda dx f - delta^2 dx [H, dx^2 f] dx^2 f)."""
    dxx_f = derivative(f, 2)
    first = derivative(commutator_dxx(f, lambda_pow(derivative(f, 1), 1.0)), 1)
    second = derivative(commutator_hilbert(dxx_f, dxx_f), 1)
    return p.epsilon * (p.delta**2 * first - p.delta**2 * second)


def run(rng: np.random.Generator) -> CheckOutcome:
    grid = Grid(GRID_N)
    simplified = ModelParams(delta=0.05, beta=1e-3, epsilon=0.7, variant=Variant.SIMPLIFIED)
    full = ModelParams(delta=0.05, beta=1e-3, epsilon=0.7, variant=Variant.FULL)
    worst = 0.0
    for _ in range(STATES):
        state = random_wave_state(grid, rng)
        difference = nonlinear_rhs_full(state, full) - nonlinear_rhs_simplified(state, simplified)
        expected = dropped_terms(state.f, simplified)
        scale = max(1.0, float(np.max(np.abs(nonlinear_rhs_simplified(state, simplified).coeffs))))
        worst = max(worst, difference.max_abs_difference(expected) / scale)

    return CheckOutcome(
        passed=worst < TOLERANCE,
        measured={"max_error": worst, "states": STATES},
        detail=f"full - simplified vs the two dropped terms: max error {worst:.2e}",
    )


CONFIG = CheckConfig(
    check_id=8,
    name="Model consistency",
    description="at alpha1 = alpha2 = delta, Full - Simplified equals the two dropped terms to 1e-12",
    run=run,
    budget_seconds=2.0,
)
