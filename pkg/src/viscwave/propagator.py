"""Exact per-mode propagators of the linear part.

Each Fourier mode obeys the damped oscillator

    fhat'' + a fhat' + b fhat = N(t),      a = damping(k), b = stiffness(k)

i.e. u' = A u + N e2 with u = (fhat, fhat'), A = [[0, 1], [-b, -a]]. Writing
mu = -a/2 and disc = a^2/4 - b,

    exp(tA) = exp(mu t) [C(t) I + S(t) (A - mu I)]

with C = cosh(sqrt(disc) t), S = sinh(sqrt(disc) t)/sqrt(disc), which turns
into cos/sin for disc < 0 (underdamped) and into a power series when disc is
negligible against b (critical damping, and the free particle at k = 0).
"""

from dataclasses import dataclass
from math import factorial

import numpy as np
from loguru import logger

from spectral import Grid
from viscwave.model import linear_symbol
from viscwave.params import ModelParams

CRITICAL_TOLERANCE = 1e-8
_SERIES_TERMS = 12
_PHI_SERIES_RADIUS = 0.1


def _phi1(z: np.ndarray) -> np.ndarray:
    """(exp(z) - 1) / z for z != 0."""
    return np.expm1(z) / z


def _phi2(z: np.ndarray) -> np.ndarray:
    """(exp(z) - 1 - z) / z^2, by its Taylor series near 0."""
    small = np.abs(z) < _PHI_SERIES_RADIUS
    safe = np.where(small, 1.0, z)
    out = (np.expm1(safe) - safe) / (safe * safe)
    if np.any(small):
        zs = z[small]
        total = np.zeros_like(zs)
        for n in reversed(range(_SERIES_TERMS)):
            total = total * zs + 1.0 / factorial(n + 2)
        out[small] = total
    return out


def oscillator_entries(damping, stiffness, dt: float) -> dict[str, np.ndarray]:
    """Closed-form exponential and Duhamel weights, elementwise.

    Args:
        damping: Array of a(k) >= 0
        stiffness: Array of b(k) >= 0 (b = 0 only together with a = 0)
        dt: Step length (any non-zero real)

    Returns:
        Dict with the matrix entries e00, e01, e10, e11, the first Duhamel
        weight w1 = int_0^dt exp((dt-s)A) ds e2 as (w1_0, w1_1) and the second
        w2 = (1/dt) int_0^dt exp((dt-s)A) s ds e2 as (w2_0, w2_1)
    """
    if dt == 0:
        raise ValueError("Invalid dt: 0. Must be non-zero.")
    a = np.atleast_1d(np.asarray(damping, dtype=np.float64))
    b = np.atleast_1d(np.asarray(stiffness, dtype=np.float64))
    if np.any((b == 0) & (a != 0)):
        raise ValueError("Zero stiffness with non-zero damping is not a model mode")

    h = float(dt)
    mu = -0.5 * a
    disc = 0.25 * a * a - b

    critical = np.abs(disc) <= CRITICAL_TOLERANCE * np.abs(b)
    under = ~critical & (disc < 0)
    over = ~critical & (disc > 0)

    e_c = np.empty_like(a)
    e_s = np.empty_like(a)

    if np.any(critical):
        z = disc[critical] * h * h
        c_sum = np.zeros_like(z)
        s_sum = np.zeros_like(z)
        power = np.ones_like(z)
        for n in range(_SERIES_TERMS):
            c_sum += power / factorial(2 * n)
            s_sum += power / factorial(2 * n + 1)
            power = power * z
        growth = np.exp(mu[critical] * h)
        e_c[critical] = growth * c_sum
        e_s[critical] = growth * h * s_sum

    if np.any(under):
        omega = np.sqrt(-disc[under])
        growth = np.exp(mu[under] * h)
        e_c[under] = growth * np.cos(omega * h)
        e_s[under] = growth * np.sin(omega * h) / omega

    if np.any(over):
        root = np.sqrt(disc[over])
        fast = mu[over] - root
        # slow * fast = b
        slow = b[over] / fast
        plus = np.exp(slow * h)
        minus = np.exp(fast * h)
        e_c[over] = 0.5 * (plus + minus)
        e_s[over] = 0.5 * (plus - minus) / root

    e00 = e_c - mu * e_s
    e01 = e_s
    e10 = -b * e_s
    e11 = e_c + mu * e_s

    free = b == 0
    safe_b = np.where(free, 1.0, b)
    w1_0 = np.where(free, 0.5 * h * h, (1.0 - e11 - a * e01) / safe_b)
    w1_1 = e01
    gap = w1_1 - h
    w2_0 = np.where(free, h * h / 6.0, (-a * w1_0 - gap) / (safe_b * h))

    if np.any(over):
        # Real distinct roots: weights as divided differences of phi1 and phi2.
        zs, zf = slow * h, fast * h
        spread = slow - fast
        w1_0[over] = h * (_phi1(zs) - _phi1(zf)) / spread
        w2_0[over] = h * (_phi2(zs) - _phi2(zf)) / spread

    w2_1 = w1_0 / h

    return {
        "e00": e00, "e01": e01, "e10": e10, "e11": e11,
        "w1_0": w1_0, "w1_1": w1_1, "w2_0": w2_0, "w2_1": w2_1,
    }


@dataclass(frozen=True)
class ModePropagator:
    """Exact propagation of one mode over one step.

    Attributes:
        k: Wavenumber
        dt: Step length
        matrix: exp(dt A_k), maps (fhat, fhat') at t to t + dt
        duhamel: Response to a unit constant forcing over the step
        duhamel2: Response to a unit forcing ramping linearly from 0 to 1
        damping: a(k)
        stiffness: b(k)
    """

    k: int
    dt: float
    matrix: np.ndarray
    duhamel: np.ndarray
    duhamel2: np.ndarray
    damping: float
    stiffness: float

    @property
    def eigenvalues(self) -> tuple[complex, complex]:
        """Roots lambda+- of lambda^2 + a lambda + b."""
        mu = -0.5 * self.damping
        root = np.sqrt(complex(0.25 * self.damping**2 - self.stiffness))
        return mu + root, mu - root

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvals(self.matrix))))


def build_propagator(k: int, dt: float, p: ModelParams) -> ModePropagator:
    """Closed-form propagator of wavenumber k over a step dt."""
    damping, stiffness = linear_symbol(k, p)
    e = oscillator_entries(damping, stiffness, dt)
    matrix = np.array([[e["e00"][0], e["e01"][0]], [e["e10"][0], e["e11"][0]]])
    return ModePropagator(
        k=int(k),
        dt=float(dt),
        matrix=matrix,
        duhamel=np.array([e["w1_0"][0], e["w1_1"][0]]),
        duhamel2=np.array([e["w2_0"][0], e["w2_1"][0]]),
        damping=damping,
        stiffness=stiffness,
    )


class PropagatorTable:
    """Propagators for every mode of a grid at a fixed dt.

    Immutable after construction; safe to share between threads.
    """

    def __init__(self, grid: Grid, params: ModelParams, dt: float):
        self.grid = grid
        self.params = params
        self.dt = float(dt)
        damping, stiffness = linear_symbol(grid.abs_wavenumbers, params)
        self._entries = oscillator_entries(damping, stiffness, dt)
        for values in self._entries.values():
            values.setflags(write=False)
        logger.debug(f"Propagator table built: N={grid.N}, dt={self.dt:.6g}, variant={params.variant.value}")

    def propagate(self, f: np.ndarray, ft: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Homogeneous update exp(dt A) applied mode by mode."""
        e = self._entries
        return e["e00"] * f + e["e01"] * ft, e["e10"] * f + e["e11"] * ft

    def first_weight(self, forcing: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        e = self._entries
        return e["w1_0"] * forcing, e["w1_1"] * forcing

    def second_weight(self, forcing: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        e = self._entries
        return e["w2_0"] * forcing, e["w2_1"] * forcing
