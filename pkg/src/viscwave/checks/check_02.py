"""Check 2: commutators against the truncated-convolution oracle configuration."""

import numpy as np

from spectral import Grid, commutator_dxx, commutator_hilbert, random_mean_zero_field
from spectral.oracles import oracle_commutator_dxx, oracle_commutator_hilbert
from viscwave.models import CheckOutcome

from .check_config import CheckConfig

GRID_N = 64
PAIRS = 100
TOLERANCE = 1e-11


def run(rng: np.random.Generator) -> CheckOutcome:
    grid = Grid(GRID_N)
    worst_hilbert = 0.0
    worst_dxx = 0.0
    for _ in range(PAIRS):
        f = random_mean_zero_field(grid, rng)
        g = random_mean_zero_field(grid, rng)
        worst_hilbert = max(worst_hilbert, commutator_hilbert(f, g).max_abs_difference(oracle_commutator_hilbert(f, g)))
        worst_dxx = max(worst_dxx, commutator_dxx(f, g).max_abs_difference(oracle_commutator_dxx(f, g)))

    return CheckOutcome(
        passed=max(worst_hilbert, worst_dxx) < TOLERANCE,
        measured={"hilbert_error": worst_hilbert, "dxx_error": worst_dxx, "pairs": PAIRS},
        detail=f"[H,f]g error {worst_hilbert:.2e}, [dxx,f]g error {worst_dxx:.2e} on {PAIRS} pairs",
    )


CONFIG = CheckConfig(
    check_id=2,
    name="Commutator oracle",
    description="[H,f]g and [dxx,f]g vs O(N^2) truncated convolution, 100 pairs at N=64; < 1e-11",
    run=run,
    budget_seconds=5.0,
)
