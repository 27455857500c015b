"""Sobolev norms, energy and dissipation functionals of a wave state.

All norms are continuum norms of the band-limited interpolant:

    ||f||_{H^s}^2 = 2 pi sum_k |k|^{2s} |fhat(k)|^2

The energy is the bracket

    e(t) = ||f||_{H^4}^2 + beta ||f||_{H^5}^2 + delta^2 ||f||_{H^5.5}^2 + ||f_t||_{H^3.5}^2

and the reported E(t) is its running maximum over the sampled instants (the
continuous-time maximum is only approximated from below). The dissipation is
D(t) = 2 delta ||f_t||_{H^4.5}^2.
"""

from dataclasses import dataclass, field

import numpy as np

from spectral import SpectralField
from viscwave.model import linear_symbol
from viscwave.params import ModelParams, WaveState

H_NORM_ORDERS: tuple[float, ...] = (1.0, 2.0, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5)
FT_NORM_ORDERS: tuple[float, ...] = (2.25, 3.0, 3.5, 4.0, 4.5)


def _column(prefix: str, s: float) -> str:
    return prefix + f"{s:g}".replace(".", "")


CSV_COLUMNS: tuple[str, ...] = (
    "t",
    *(_column("h", s) for s in H_NORM_ORDERS),
    *(_column("ft", s) for s in FT_NORM_ORDERS),
    "e_inst",
    "e_max",
    "dissipation",
    "e_linear",
)


def _squared_norm(f: SpectralField, s: float) -> float:
    power = np.abs(f.coeffs) ** 2
    if s == 0:
        return float(2.0 * np.pi * np.sum(power))
    k = f.grid.abs_wavenumbers
    weights = np.zeros_like(k)
    nonzero = k > 0
    weights[nonzero] = k[nonzero] ** (2.0 * s)
    return float(2.0 * np.pi * np.sum(weights * power))


def sobolev_norm(f: SpectralField, s: float) -> float:
    """Homogeneous Sobolev norm; the k = 0 mode only counts for s = 0."""
    return float(np.sqrt(_squared_norm(f, s)))


def energy(s: WaveState, p: ModelParams, prev_max: float = 0.0) -> tuple[float, float]:
    """Instantaneous energy bracket and the updated running maximum."""
    e_inst = (
        _squared_norm(s.f, 4.0)
        + p.beta * _squared_norm(s.f, 5.0)
        + p.delta**2 * _squared_norm(s.f, 5.5)
        + _squared_norm(s.ft, 3.5)
    )
    return e_inst, max(prev_max, e_inst)


def dissipation(s: WaveState, p: ModelParams) -> float:
    return 2.0 * p.delta * _squared_norm(s.ft, 4.5)


def linear_energy(s: WaveState, p: ModelParams) -> float:
    """Quadratic form conserved up to damping by the linear flow.

    ||f_t||_{L^2}^2 + <S(Lambda) f, f> with S the variant's stiffness symbol;
    for the simplified model this is
    ||f_t||^2 + ||f||_{H^1/2}^2 + beta ||f||_{H^3/2}^2 + delta^2 ||f||_{H^2}^2.
    """
    _, stiffness = linear_symbol(s.grid.abs_wavenumbers, p)
    return float(
        2.0 * np.pi * np.sum(np.abs(s.ft.coeffs) ** 2 + stiffness * np.abs(s.f.coeffs) ** 2)
    )


def linear_energy_rate(s: WaveState, p: ModelParams) -> float:
    """d/dt linear_energy along the linear flow: -2 <D(Lambda) f_t, f_t>.

    Equals -4 delta ||f_t||_{H^1}^2 for the simplified model.
    """
    damping, _ = linear_symbol(s.grid.abs_wavenumbers, p)
    return float(-2.0 * 2.0 * np.pi * np.sum(damping * np.abs(s.ft.coeffs) ** 2))


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Diagnostics of one sampled instant."""

    t: float
    h_norms: dict[float, float] = field(default_factory=dict)
    ft_norms: dict[float, float] = field(default_factory=dict)
    e_inst: float = 0.0
    e_max: float = 0.0
    dissipation: float = 0.0
    e_linear: float = 0.0

    def values(self) -> list[float]:
        """Row values in CSV_COLUMNS order."""
        return [
            self.t,
            *(self.h_norms[s] for s in H_NORM_ORDERS),
            *(self.ft_norms[s] for s in FT_NORM_ORDERS),
            self.e_inst,
            self.e_max,
            self.dissipation,
            self.e_linear,
        ]

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values())))


def diagnostics_record(s: WaveState, p: ModelParams, prev_max: float = 0.0) -> DiagnosticsRecord:
    e_inst, e_max = energy(s, p, prev_max)
    return DiagnosticsRecord(
        t=s.t,
        h_norms={order: sobolev_norm(s.f, order) for order in H_NORM_ORDERS},
        ft_norms={order: sobolev_norm(s.ft, order) for order in FT_NORM_ORDERS},
        e_inst=e_inst,
        e_max=e_max,
        dissipation=dissipation(s, p),
        e_linear=linear_energy(s, p),
    )
