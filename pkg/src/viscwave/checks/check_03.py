"""Check 3: linear dispersion and decay configuration."""

import itertools

import numpy as np

from viscwave.dispersion import measure_mode
from viscwave.models import CheckOutcome
from viscwave.params import ModelParams, Variant

from .check_config import CheckConfig

WAVENUMBERS = range(1, 9)
DELTAS = (0.0, 0.01, 0.1)
BETAS = (0.0, 1e-5, 0.1)
DECAY_TOLERANCE = 0.01
FREQUENCY_TOLERANCE = 1e-6


def run(rng: np.random.Generator) -> CheckOutcome:
    worst_decay = 0.0
    worst_frequency = 0.0
    cases = 0
    for delta, beta in itertools.product(DELTAS, BETAS):
        params = ModelParams(delta=delta, beta=beta, epsilon=0.0, variant=Variant.LINEAR)
        for k in WAVENUMBERS:
            m = measure_mode(k, params)
            expected_frequency = float(np.sqrt(k + beta * k**3))
            worst_frequency = max(worst_frequency, abs(m.measured_frequency - expected_frequency))
            if m.envelope_relative_error is not None:
                worst_decay = max(worst_decay, m.envelope_relative_error)
            cases += 1

    return CheckOutcome(
        passed=worst_decay < DECAY_TOLERANCE and worst_frequency < FREQUENCY_TOLERANCE,
        measured={"decay_relative_error": worst_decay, "frequency_error": worst_frequency, "cases": cases},
        detail=f"decay rel. error {worst_decay:.2e}, frequency error {worst_frequency:.2e} over {cases} modes",
    )


CONFIG = CheckConfig(
    check_id=3,
    name="Linear dispersion",
    description="decay delta k^2 within 1% and frequency sqrt(k + beta k^3) within 1e-6, k=1..8",
    run=run,
    budget_seconds=5.0,
)
