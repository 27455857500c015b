"""Run configuration: the flat `key = value` grammar and initial data.

Example:

    # small-steepness run
    grid_n = 64
    t_end = 1.0
    delta = 0.1
    init = 1:0.1:0.0, 2:0.02:0.0

Unknown keys are rejected. Missing keys take the defaults of RunConfig, which
are the small-steepness preset eps=1e-2, beta=1e-5, delta=alpha1=alpha2=1e-4.
"""

import re
from pathlib import Path
from typing import Literal

import numpy as np
from loguru import logger
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PositiveFloat,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

from spectral import Grid, SpectralField, forward_transform, project_mean_zero, random_mean_zero_field
from viscwave.params import ModelParams, Variant, WaveState
from viscwave.timestepper import Scheme, SimConfig, default_dt

RANDOM_SPECTRUM_EXPONENT = 3.0


class ConfigError(ValueError):
    """Invalid run configuration; line is 1-based, None for cross-key problems."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class InitMode(BaseModel):
    """One term amplitude * cos(k x + phase) of the initial data."""

    model_config = ConfigDict(frozen=True)

    k: int
    amplitude: float
    phase: float = 0.0


class RunConfig(BaseModel):
    """Everything one `simulate` invocation needs.

    Attributes:
        grid_n: Collocation points (even, >= 8)
        dt: Step length, 0 picks the default from the fastest mode
        t_end: Final time
        delta, beta, epsilon, alpha1, alpha2: Model coefficients
        variant: linear, simplified or full
        init_modes: Cosine modes of f at t = 0
        init_ft_modes: Cosine modes of f_t at t = 0
        snapshot_every: Steps between snapshot files
        diagnostics_every: Steps between diagnostics rows
        output_dir: Directory receiving snapshots, CSV and summary
        seed: Seed for random initial data when init_modes is empty
        scheme: Two-stage integrator variant
        last_term: Coefficient of the last full-model term
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    grid_n: int = 64
    dt: NonNegativeFloat = 0.0
    t_end: PositiveFloat = 1.0
    delta: NonNegativeFloat = 1e-4
    beta: NonNegativeFloat = 1e-5
    epsilon: NonNegativeFloat = 1e-2
    alpha1: NonNegativeFloat | None = None
    alpha2: NonNegativeFloat | None = None
    variant: Variant = Variant.SIMPLIFIED
    init_modes: tuple[InitMode, ...] = ()
    init_ft_modes: tuple[InitMode, ...] = ()
    snapshot_every: PositiveInt = 100
    diagnostics_every: PositiveInt = 10
    output_dir: str = "output"
    seed: int | None = None
    scheme: Scheme = "midpoint"
    last_term: Literal["alpha2_alpha2", "alpha1_alpha2"] = "alpha2_alpha2"

    @field_validator("grid_n")
    @classmethod
    def _check_grid_n(cls, value: int) -> int:
        if value % 2 != 0:
            raise ValueError("grid_n must be even")
        if value < 8:
            raise ValueError(f"grid_n must be >= 8, got {value}")
        return value

    @model_validator(mode="after")
    def _check_modes_in_band(self) -> "RunConfig":
        band = (self.grid_n - 1) // 3
        for key, modes in (("init", self.init_modes), ("init_ft", self.init_ft_modes)):
            for mode in modes:
                if mode.k < 1:
                    raise ValueError(f"{key}: k={mode.k} must be >= 1")
                if mode.k > band:
                    raise ValueError(f"{key}: k={mode.k} exceeds dealias band {band}")
        return self

    def model_params(self) -> ModelParams:
        return ModelParams(
            delta=self.delta,
            beta=self.beta,
            epsilon=self.epsilon,
            alpha1=self.alpha1,
            alpha2=self.alpha2,
            variant=self.variant,
            last_term_coefficient=self.last_term,
        )

    def grid(self) -> Grid:
        return Grid(self.grid_n)

    def sim_config(self, params: ModelParams | None = None) -> SimConfig:
        """Time-stepping controls, resolving dt = 0 to the default step."""
        dt = self.dt
        if dt == 0.0:
            dt = default_dt(self.grid(), params or self.model_params())
            logger.info(f"dt not set, using default dt={dt:.6g}")
        return SimConfig(
            dt=dt,
            t_end=self.t_end,
            snapshot_every=self.snapshot_every,
            diagnostics_every=self.diagnostics_every,
            scheme=self.scheme,
        )


_MODE_KEYS = {"init": "init_modes", "init_ft": "init_ft_modes"}
_PLAIN_KEYS = {
    "grid_n", "dt", "t_end", "delta", "beta", "epsilon", "alpha1", "alpha2", "variant",
    "snapshot_every", "diagnostics_every", "output_dir", "seed", "scheme", "last_term",
}
_KEY_PATTERN = re.compile(r"^[a-z_][a-z0-9_]*$")


def _parse_modes(value: str, line: int) -> list[InitMode]:
    modes = []
    for item in (part.strip() for part in value.split(",")):
        if not item:
            continue
        fields = item.split(":")
        if len(fields) not in (2, 3):
            raise ConfigError(f"malformed mode '{item}', expected k:amp:phase", line)
        try:
            k = int(fields[0])
            amplitude = float(fields[1])
            phase = float(fields[2]) if len(fields) == 3 else 0.0
        except ValueError:
            raise ConfigError(f"malformed mode '{item}', expected k:amp:phase", line) from None
        modes.append(InitMode(k=k, amplitude=amplitude, phase=phase))
    return modes


def _line_for(error: dict, key_lines: dict[str, int]) -> int | None:
    loc = error.get("loc") or ()
    if loc:
        name = str(loc[0])
        for key, field_name in _MODE_KEYS.items():
            if field_name == name:
                name = key
        return key_lines.get(name)
    match = re.match(r"(?:Value error, )?(\w+):", error.get("msg", ""))
    return key_lines.get(match.group(1)) if match else None


def _message(error: dict) -> str:
    msg = error.get("msg", "invalid value")
    msg = msg.removeprefix("Value error, ")
    loc = error.get("loc") or ()
    if loc and not msg.startswith(str(loc[0])):
        return f"{loc[0]}: {msg}"
    return msg


def parse_config(text: str) -> RunConfig:
    """Parse the `key = value` run-config grammar.

    Args:
        text: Config file contents; `#` starts a comment

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: On syntax errors, unknown or repeated keys and
            constraint violations
    """
    values: dict[str, object] = {}
    key_lines: dict[str, int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got '{line}'", number)
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if not _KEY_PATTERN.match(key):
            raise ConfigError(f"invalid key '{key}'", number)
        if key not in _PLAIN_KEYS and key not in _MODE_KEYS:
            raise ConfigError(f"unknown key '{key}'", number)
        if key in key_lines:
            raise ConfigError(f"duplicate key '{key}' (first set on line {key_lines[key]})", number)
        key_lines[key] = number

        if key in _MODE_KEYS:
            values[_MODE_KEYS[key]] = _parse_modes(value, number)
        elif key == "seed" and value.lower() in ("", "none"):
            values[key] = None
        elif key == "variant":
            values[key] = value.lower()
        else:
            values[key] = value

    try:
        cfg = RunConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(_message(first), _line_for(first, key_lines)) from None

    try:
        cfg.model_params()
    except ValidationError as e:
        raise ConfigError(_message(e.errors()[0])) from None

    logger.debug(f"Parsed config: {cfg.model_dump()}")
    return cfg


def load_config(path: str | Path) -> RunConfig:
    """Read and parse a config file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    return parse_config(text)


def _cosine_sum(grid: Grid, modes: tuple[InitMode, ...]) -> SpectralField:
    x = grid.points
    samples = np.zeros(grid.N)
    for mode in modes:
        samples += mode.amplitude * np.cos(mode.k * x + mode.phase)
    return project_mean_zero(forward_transform(samples, grid))


def build_initial_state(cfg: RunConfig, grid: Grid | None = None) -> WaveState:
    """Initial data f(x, 0) and f_t(x, 0) at t = 0, both mean-zero.

    f is the cosine sum of init_modes; with no modes and a seed it is a random
    band-limited field with |fhat(k)| ~ k^-3. f_t is the cosine sum of
    init_ft_modes (zero when empty).
    """
    grid = grid or cfg.grid()
    if grid.N != cfg.grid_n:
        raise ValueError(f"Invalid grid: N={grid.N}. Config expects grid_n={cfg.grid_n}.")

    if cfg.init_modes:
        f = _cosine_sum(grid, cfg.init_modes)
    elif cfg.seed is not None:
        f = random_mean_zero_field(grid, np.random.default_rng(cfg.seed), RANDOM_SPECTRUM_EXPONENT)
        logger.info(f"Random initial data from seed {cfg.seed}")
    else:
        logger.warning("No init modes and no seed: f starts at rest")
        f = SpectralField.zeros(grid)

    ft = _cosine_sum(grid, cfg.init_ft_modes) if cfg.init_ft_modes else SpectralField.zeros(grid)
    return WaveState(f, ft, 0.0)
