"""Model parameters and the evolving wave state."""

from dataclasses import dataclass
from enum import Enum
from typing import Literal

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from spectral import SpectralField, project_mean_zero, random_mean_zero_field
from spectral.grid import check_same_grid


class Variant(str, Enum):
    """Which right-hand side drives the evolution."""

    LINEAR = "linear"
    SIMPLIFIED = "simplified"
    FULL = "full"

    @property
    def code(self) -> int:
        return _VARIANT_CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "Variant":
        for variant, value in _VARIANT_CODES.items():
            if value == code:
                return variant
        raise ValueError(f"Unknown variant code: {code}. Must be one of {sorted(_VARIANT_CODES.values())}.")


_VARIANT_CODES = {Variant.LINEAR: 0, Variant.SIMPLIFIED: 1, Variant.FULL: 2}


class ModelParams(BaseModel):
    """Dimensionless coefficients of the damped wave equation.

    Attributes:
        delta: Viscous damping
        beta: Bond number (surface tension)
        epsilon: Steepness, overall scale of the nonlinearity
        alpha1: First damping coefficient of the full model (defaults to delta)
        alpha2: Second damping coefficient of the full model (defaults to delta)
        variant: Linear, simplified or full right-hand side
        last_term_coefficient: Coefficient of the last full-model term,
            read literally as alpha2*alpha2 unless switched
    """

    model_config = ConfigDict(frozen=True)

    delta: float = Field(default=1e-4, ge=0.0)
    beta: float = Field(default=1e-5, ge=0.0)
    epsilon: float = Field(default=1.0, ge=0.0)
    alpha1: float | None = Field(default=None, ge=0.0)
    alpha2: float | None = Field(default=None, ge=0.0)
    variant: Variant = Variant.SIMPLIFIED
    last_term_coefficient: Literal["alpha2_alpha2", "alpha1_alpha2"] = "alpha2_alpha2"

    @model_validator(mode="before")
    @classmethod
    def _default_alphas(cls, data):
        if isinstance(data, dict):
            data = dict(data)
            delta = data.get("delta", 1e-4)
            if data.get("alpha1") is None:
                data["alpha1"] = delta
            if data.get("alpha2") is None:
                data["alpha2"] = delta
        return data

    @model_validator(mode="after")
    def _check_regime(self) -> "ModelParams":
        if self.variant == Variant.SIMPLIFIED and not (self.alpha1 == self.alpha2 == self.delta):
            raise ValueError(
                f"simplified variant requires alpha1 = alpha2 = delta, "
                f"got alpha1={self.alpha1}, alpha2={self.alpha2}, delta={self.delta}"
            )
        if self.delta == 0.0:
            logger.warning("delta = 0: inviscid run, outside the well-posedness regime (delta > 0)")
        return self

    @property
    def last_coefficient(self) -> float:
        if self.last_term_coefficient == "alpha1_alpha2":
            return self.alpha1 * self.alpha2
        return self.alpha2 * self.alpha2

    @classmethod
    def small_steepness(cls, **overrides) -> "ModelParams":
        """Typical small-steepness preset: eps=1e-2, beta=1e-5, delta=alpha1=alpha2=1e-4."""
        values = {"epsilon": 1e-2, "beta": 1e-5, "delta": 1e-4}
        values.update(overrides)
        return cls(**values)


@dataclass(frozen=True)
class WaveState:
    """Interface height f and its time derivative ft at time t."""

    f: SpectralField
    ft: SpectralField
    t: float = 0.0

    def __post_init__(self):
        check_same_grid(self.f, self.ft)

    @property
    def grid(self):
        return self.f.grid

    def is_mean_zero(self) -> bool:
        return self.f.coeffs[0] == 0 and self.ft.coeffs[0] == 0

    def mean_zero(self) -> "WaveState":
        """Same state with the k = 0 modes removed."""
        return WaveState(project_mean_zero(self.f), project_mean_zero(self.ft), self.t)

    def scaled(self, factor: float) -> "WaveState":
        return WaveState(factor * self.f, factor * self.ft, self.t)

    def at(self, t: float) -> "WaveState":
        return WaveState(self.f, self.ft, t)


def random_wave_state(grid, rng, amplitude: float = 1.0, exponent: float = 3.0, t: float = 0.0) -> WaveState:
    """Random mean-zero state, f and f_t drawn independently with |fhat(k)| ~ k^-exponent."""
    f = amplitude * random_mean_zero_field(grid, rng, exponent)
    ft = amplitude * random_mean_zero_field(grid, rng, exponent)
    return WaveState(f, ft, t)
