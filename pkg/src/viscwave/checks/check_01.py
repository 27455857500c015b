"""Check 1: Fourier-multiplier identities configuration."""

import numpy as np

from spectral import Grid, derivative, hilbert, lambda_pow, random_mean_zero_field
from viscwave.models import CheckOutcome

from .check_config import CheckConfig

GRID_SIZES = (8, 16, 32, 64, 128, 256)
POWERS = (0.5, 1.0, 1.5, 2.0)
TOLERANCE = 1e-12


def _inner(a, b) -> float:
    return float(2.0 * np.pi * np.real(np.sum(a.coeffs * np.conj(b.coeffs))))


def run(rng: np.random.Generator) -> CheckOutcome:
    errors = {"hilbert_squared": 0.0, "lambda_is_h_dx": 0.0, "lambda_semigroup": 0.0, "adjointness": 0.0}
    for n in GRID_SIZES:
        grid = Grid(n)
        f = random_mean_zero_field(grid, rng)
        g = random_mean_zero_field(grid, rng)

        errors["hilbert_squared"] = max(errors["hilbert_squared"], hilbert(hilbert(f)).max_abs_difference(-f))
        lam = lambda_pow(f, 1.0)
        errors["lambda_is_h_dx"] = max(
            errors["lambda_is_h_dx"],
            hilbert(derivative(f, 1)).max_abs_difference(lam),
            derivative(hilbert(f), 1).max_abs_difference(lam),
        )
        for s in POWERS:
            for t in POWERS:
                composed = lambda_pow(lambda_pow(f, s), t)
                scale = max(1.0, float(np.max(np.abs(lambda_pow(f, s + t).coeffs))))
                errors["lambda_semigroup"] = max(
                    errors["lambda_semigroup"], composed.max_abs_difference(lambda_pow(f, s + t)) / scale
                )
        errors["adjointness"] = max(
            errors["adjointness"],
            abs(_inner(hilbert(f), g) + _inner(f, hilbert(g))),
            *(abs(_inner(lambda_pow(f, s), g) - _inner(f, lambda_pow(g, s))) for s in POWERS),
        )

    worst = max(errors.values())
    return CheckOutcome(
        passed=worst < TOLERANCE,
        measured={**errors, "grid_sizes": list(GRID_SIZES)},
        detail=f"max identity error {worst:.2e} over N in {GRID_SIZES[0]}..{GRID_SIZES[-1]}",
    )


CONFIG = CheckConfig(
    check_id=1,
    name="Operator identities",
    description="H^2 = -Id, Lambda = H dx = dx H, Lambda^s Lambda^t = Lambda^(s+t), adjointness; < 1e-12",
    run=run,
    budget_seconds=1.0,
)
