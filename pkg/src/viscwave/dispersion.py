"""Linear dispersion: analytic eigenvalues and their measurement from a run.

A single mode cos(kx) evolved by the linear flow is sampled every h. The
complex pair lambda+- is recovered by fitting the two-term recurrence
c[n+2] = s c[n+1] - q c[n] (Prony), whose characteristic roots are
exp(lambda+- h). The decay rate is recovered separately by a log-linear fit of
the amplitude envelope sqrt(fhat^2 + ((fhat' + a/2 fhat) / omega)^2), which
for an underdamped mode is exactly C exp(-a t / 2).
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from loguru import logger

from spectral import Grid, SpectralField
from viscwave.model import linear_symbol
from viscwave.params import ModelParams, Variant, WaveState
from viscwave.timestepper import SimConfig, SnapshotEvent, simulate

DEFAULT_SAMPLES = 48
# Keeps omega*h well inside (0, pi) so log() picks the principal branch.
PHASE_PER_SAMPLE = 0.25 * math.pi
MAX_TOTAL_DECAY = 20.0


@dataclass(frozen=True)
class ModeMeasurement:
    """Analytic and measured linear behaviour of one wavenumber.

    Attributes:
        k: Wavenumber
        lambda_plus: Analytic root with the larger imaginary (or real) part
        lambda_minus: Its partner
        measured_plus: Root recovered by the recurrence fit
        envelope_decay: Decay rate from the log-envelope fit (None unless underdamped)
        dt: Sampling interval of the run
    """

    k: int
    lambda_plus: complex
    lambda_minus: complex
    measured_plus: complex
    measured_minus: complex
    envelope_decay: float | None
    dt: float

    @property
    def decay(self) -> float:
        return -self.lambda_plus.real

    @property
    def frequency(self) -> float:
        return abs(self.lambda_plus.imag)

    @property
    def measured_decay(self) -> float:
        return -self.measured_plus.real

    @property
    def measured_frequency(self) -> float:
        return abs(self.measured_plus.imag)

    @property
    def frequency_error(self) -> float:
        return abs(self.measured_frequency - self.frequency)

    @property
    def decay_error(self) -> float:
        return abs(self.measured_decay - self.decay)

    @property
    def envelope_relative_error(self) -> float | None:
        """|fit - exact| / exact, or the absolute error when the exact rate is 0."""
        if self.envelope_decay is None:
            return None
        scale = self.decay if self.decay > 0 else 1.0
        return abs(self.envelope_decay - self.decay) / scale


def analytic_eigenvalues(k: int, p: ModelParams) -> tuple[complex, complex]:
    """Roots of lambda^2 + damping(k) lambda + stiffness(k), '+' root first."""
    damping, stiffness = linear_symbol(k, p)
    root = cmath.sqrt(0.25 * damping**2 - stiffness)
    return -0.5 * damping + root, -0.5 * damping - root


def _grid_for(k: int) -> Grid:
    n = 8
    while n // 2 - 1 < k:
        n *= 2
    return Grid(n)


def _sampling_interval(k: int, p: ModelParams, samples: int) -> float:
    damping, stiffness = linear_symbol(k, p)
    omega_sq = stiffness - 0.25 * damping**2
    scale = math.sqrt(abs(omega_sq)) if omega_sq != 0 else math.sqrt(stiffness)
    h = PHASE_PER_SAMPLE / max(scale, 1e-12)
    if damping > 0:
        h = min(h, MAX_TOTAL_DECAY / (samples * 0.5 * damping))
    return h


def fit_recurrence(values: np.ndarray, h: float) -> tuple[complex, complex]:
    """Continuous-time rates of a two-term exponential sequence sampled every h.

    Args:
        values: Samples c[0..M-1], M >= 4
        h: Sampling interval

    Returns:
        (lambda_a, lambda_b) ordered by decreasing imaginary part, then real part
    """
    c = np.asarray(values, dtype=np.complex128)
    if c.size < 4:
        raise ValueError(f"Invalid sample count: {c.size}. Must be >= 4.")
    design = np.column_stack([c[1:-1], -c[:-2]])
    (s, q), *_ = np.linalg.lstsq(design, c[2:], rcond=None)
    roots = np.roots([1.0, -s, q])
    rates = sorted((complex(np.log(z)) / h for z in roots), key=lambda z: (-z.imag, -z.real))
    return rates[0], rates[1]


def fit_envelope_decay(t: np.ndarray, f: np.ndarray, ft: np.ndarray, damping: float, omega: float) -> float:
    """Decay rate from a log-linear fit of the exact oscillator envelope."""
    envelope = np.sqrt(f**2 + ((ft + 0.5 * damping * f) / omega) ** 2)
    slope, _ = np.polyfit(t, np.log(envelope), 1)
    return float(-slope)


def measure_mode(k: int, p: ModelParams, samples: int = DEFAULT_SAMPLES) -> ModeMeasurement:
    """Run the linear flow on cos(kx) and measure its eigenvalues.

    Args:
        k: Wavenumber (>= 1)
        p: Parameters; the run always uses the linear part of p's variant
        samples: Number of sampling intervals

    Returns:
        ModeMeasurement with analytic and measured values
    """
    if k < 1:
        raise ValueError(f"Invalid k: {k}. Must be >= 1.")
    linear = p if p.variant == Variant.LINEAR else p.model_copy(update={"variant": Variant.LINEAR})
    if p.variant == Variant.FULL and p.alpha1 != p.alpha2:
        logger.warning("Full-variant damping pair differs; measuring with the simplified linear symbol")

    grid = _grid_for(k)
    coeffs = np.zeros(grid.N, dtype=np.complex128)
    coeffs[grid.index_of(k)] = 0.5
    coeffs[grid.index_of(-k)] = 0.5
    init = WaveState(SpectralField(grid, coeffs), SpectralField.zeros(grid), 0.0)

    h = _sampling_interval(k, linear, samples)
    config = SimConfig(dt=h, t_end=samples * h, snapshot_every=1, diagnostics_every=samples)
    states: list[WaveState] = []

    def collect(event) -> None:
        if isinstance(event, SnapshotEvent):
            states.append(event.state)

    simulate(init, linear, config, collect)

    index = grid.index_of(k)
    t = np.array([s.t for s in states])
    f = np.array([s.f.coeffs[index].real for s in states])
    ft = np.array([s.ft.coeffs[index].real for s in states])

    plus, minus = analytic_eigenvalues(k, linear)
    measured_plus, measured_minus = fit_recurrence(f, h)

    damping, stiffness = linear_symbol(k, linear)
    omega_sq = stiffness - 0.25 * damping**2
    envelope = fit_envelope_decay(t, f, ft, damping, math.sqrt(omega_sq)) if omega_sq > 0 else None

    measurement = ModeMeasurement(
        k=k,
        lambda_plus=plus,
        lambda_minus=minus,
        measured_plus=measured_plus,
        measured_minus=measured_minus,
        envelope_decay=envelope,
        dt=h,
    )
    logger.debug(
        f"Mode k={k}: lambda={plus:.6g}, measured={measured_plus:.6g}, envelope decay={envelope}"
    )
    return measurement


DISPERSION_COLUMNS = (
    "k",
    "re_lambda",
    "im_lambda",
    "measured_decay",
    "measured_frequency",
    "envelope_decay",
    "decay_error",
    "frequency_error",
)


def dispersion_rows(p: ModelParams, kmax: int) -> list[list[float]]:
    """One CSV row per k = 1..kmax, in DISPERSION_COLUMNS order."""
    if kmax < 1:
        raise ValueError(f"Invalid kmax: {kmax}. Must be >= 1.")
    rows = []
    for k in range(1, kmax + 1):
        m = measure_mode(k, p)
        rows.append(
            [
                k,
                m.lambda_plus.real,
                m.lambda_plus.imag,
                m.measured_decay,
                m.measured_frequency,
                m.envelope_decay if m.envelope_decay is not None else float("nan"),
                m.decay_error,
                m.frequency_error,
            ]
        )
    return rows
