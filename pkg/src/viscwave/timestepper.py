"""Time integration: exact linear propagation plus a two-stage exponential integrator.

With u = (fhat, fhat') per mode, E(h) = exp(hA), and the Duhamel weights
W1(h) = h phi1(hA) e2, W2(h) = h phi2(hA) e2, one step of length h is

    midpoint:  U   = E(h/2) u + W1(h/2) N(u)
               u+  = E(h) u + W1(h) N(u) + 2 W2(h) (N(U) - N(u))

    etd2rk:    U   = E(h) u + W1(h) N(u)
               u+  = U + W2(h) (N(U) - N(u))

Both are second order and reduce to the exact linear solution when N = 0.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, PositiveInt

from spectral import Grid, SpectralField
from viscwave.diagnostics import DiagnosticsRecord, energy
from viscwave.metrics import DiagnosticsTracker
from viscwave.model import rhs
from viscwave.params import ModelParams, Variant, WaveState
from viscwave.propagator import PropagatorTable

Scheme = Literal["midpoint", "etd2rk"]

BLOWUP_ENERGY_FACTOR = 1e6


class BlowUpError(RuntimeError):
    """The discrete solution stopped being finite or bounded."""

    def __init__(self, message: str, t: float, mode: int | None = None, reason: str = "non-finite"):
        super().__init__(message)
        self.t = t
        self.mode = mode
        self.reason = reason


class SimConfig(BaseModel):
    """Time-stepping controls.

    Attributes:
        dt: Step length
        t_end: Final time (the last step is shortened to land on it)
        snapshot_every: Steps between snapshot events
        diagnostics_every: Steps between diagnostics records
        scheme: Two-stage exponential integrator variant
    """

    model_config = ConfigDict(frozen=True)

    dt: float = Field(gt=0.0)
    t_end: float = Field(ge=0.0)
    snapshot_every: PositiveInt = 100
    diagnostics_every: PositiveInt = 10
    scheme: Scheme = "midpoint"


@dataclass(frozen=True)
class SnapshotEvent:
    """State handed to the sink at snapshot cadence."""

    step: int
    state: WaveState


SimulationEvent = SnapshotEvent | DiagnosticsRecord
Sink = Callable[[SimulationEvent], None]


def default_dt(grid: Grid, p: ModelParams) -> float:
    """Half a period of the fastest oscillation on the grid, k_max = N/2."""
    k_max = grid.N // 2
    omega_max = math.sqrt(k_max + p.beta * k_max**3)
    return 0.5 * 2.0 * math.pi / omega_max


@lru_cache(maxsize=32)
def propagator_table(grid: Grid, p: ModelParams, dt: float) -> PropagatorTable:
    return PropagatorTable(grid, p, dt)


def _forcing(s: WaveState, p: ModelParams) -> np.ndarray:
    return rhs(s, p).coeffs


def _state(grid: Grid, f: np.ndarray, ft: np.ndarray, t: float) -> WaveState:
    return WaveState(SpectralField(grid, f), SpectralField(grid, ft), t)


def _check_finite(f: np.ndarray, ft: np.ndarray, grid: Grid, t: float) -> None:
    bad = ~(np.isfinite(f) & np.isfinite(ft))
    if np.any(bad):
        mode = int(grid.wavenumbers[np.argmax(bad)])
        raise BlowUpError(f"Non-finite coefficient at t={t:.6g}, mode k={mode}", t=t, mode=mode)


def step(s: WaveState, dt: float, p: ModelParams, scheme: Scheme = "midpoint") -> WaveState:
    """Advance one step of length dt (negative dt integrates backwards).

    Raises:
        BlowUpError: If any output coefficient is not finite
    """
    grid = s.grid
    full = propagator_table(grid, p, float(dt))
    f, ft = full.propagate(s.f.coeffs, s.ft.coeffs)

    if p.variant != Variant.LINEAR:
        n1 = _forcing(s, p)
        if scheme == "midpoint":
            half = propagator_table(grid, p, 0.5 * float(dt))
            hf, hft = half.propagate(s.f.coeffs, s.ft.coeffs)
            wf, wft = half.first_weight(n1)
            n2 = _forcing(_state(grid, hf + wf, hft + wft, s.t + 0.5 * dt), p)
            af, aft = full.first_weight(n1)
            cf, cft = full.second_weight(n2 - n1)
            f, ft = f + af + 2.0 * cf, ft + aft + 2.0 * cft
        elif scheme == "etd2rk":
            af, aft = full.first_weight(n1)
            f, ft = f + af, ft + aft
            n2 = _forcing(_state(grid, f, ft, s.t + dt), p)
            cf, cft = full.second_weight(n2 - n1)
            f, ft = f + cf, ft + cft
        else:
            raise ValueError(f"Unknown scheme: {scheme!r}. Must be 'midpoint' or 'etd2rk'.")

    t_new = s.t + dt
    _check_finite(f, ft, grid, t_new)
    return _state(grid, f, ft, t_new)


class Simulation:
    """Drives one run: stepping, cadence bookkeeping and blow-up detection."""

    def __init__(self, params: ModelParams, config: SimConfig, sink: Sink | None = None):
        """Initialize the simulation.

        Args:
            params: Model parameters
            config: Step length, final time and output cadence
            sink: Callback receiving SnapshotEvent and DiagnosticsRecord values
        """
        self.params = params
        self.config = config
        self.sink = sink
        self.tracker = DiagnosticsTracker(params)

    def _emit(self, event: SimulationEvent) -> None:
        if self.sink is None:
            return
        try:
            self.sink(event)
        except Exception as e:
            logger.error(f"Sink failed, aborting run: {e}")
            raise

    def step_count(self, t_start: float = 0.0) -> tuple[int, float]:
        """Number of full steps and the length of the closing partial step (0 if none)."""
        cfg = self.config
        duration = cfg.t_end - t_start
        if duration < 0:
            raise ValueError(f"Invalid t_end: {cfg.t_end}. Must be >= the initial time {t_start}.")
        full_steps = int(math.floor(duration / cfg.dt * (1.0 + 1e-12)))
        remainder = duration - full_steps * cfg.dt
        if remainder <= 1e-12 * cfg.dt:
            remainder = 0.0
        return full_steps, remainder

    def run(self, init: WaveState) -> WaveState:
        """Integrate from init to t_end.

        Returns:
            Final state with t == t_end

        Raises:
            BlowUpError: On non-finite coefficients or runaway energy
        """
        cfg = self.config
        state = init if init.is_mean_zero() else self._project(init)
        full_steps, remainder = self.step_count(state.t)
        total = full_steps + (1 if remainder > 0 else 0)
        logger.info(
            f"Simulation start: variant={self.params.variant.value}, N={state.grid.N}, "
            f"dt={cfg.dt:.6g}, t_end={cfg.t_end:.6g}, steps={total}, scheme={cfg.scheme}"
        )

        record = self.tracker.start(state)
        e0 = record.e_inst
        self._emit(SnapshotEvent(0, state))
        self._emit(record)

        try:
            for index in range(1, total + 1):
                last = index == total
                dt = remainder if (last and remainder > 0) else cfg.dt
                state = step(state, dt, self.params, cfg.scheme)
                state = state.at(cfg.t_end if last else init.t + index * cfg.dt)
                self.tracker.increment_step()

                e_inst, _ = energy(state, self.params)
                if e0 > 0 and e_inst > BLOWUP_ENERGY_FACTOR * e0:
                    raise BlowUpError(
                        f"Energy {e_inst:.3e} exceeds {BLOWUP_ENERGY_FACTOR:g} x E(0) at t={state.t:.6g}",
                        t=state.t,
                        reason="energy",
                    )

                if index % cfg.diagnostics_every == 0:
                    record = self.tracker.record(state)
                    if not record.is_finite():
                        raise BlowUpError(
                            f"Non-finite diagnostics at t={state.t:.6g}", t=state.t, reason="diagnostics"
                        )
                    self._emit(record)
                if index % cfg.snapshot_every == 0:
                    self._emit(SnapshotEvent(index, state))
        except BlowUpError as e:
            logger.error(f"Blow-up: {e}")
            raise

        self.tracker.mark_completed()
        return state

    @staticmethod
    def _project(state: WaveState) -> WaveState:
        logger.warning(f"Initial state has non-zero mean (f: {state.f.mean:.3e}, ft: {state.ft.mean:.3e}); projecting")
        return state.mean_zero()


def simulate(init: WaveState, p: ModelParams, cfg: SimConfig, sink: Sink | None = None) -> WaveState:
    """Run a simulation and return the state at cfg.t_end."""
    return Simulation(p, cfg, sink).run(init)
