"""Right-hand side of the nonlocal fourth-order damped wave equation.

    f_tt + D(Lambda) f_t + S(Lambda) f = eps * N(f, f_t)

Simplified model (alpha1 = alpha2 = delta):

    D = 2 delta Lambda^2,   S = Lambda + beta Lambda^3 + delta^2 Lambda^4
    N = - Lambda((H f_t)^2)
        + dx [H, f] Lambda f
        + beta dx [H, f] Lambda^3 f
        + delta dx [H, H f_t] H dx^2 f
        + delta Lambda(H f_t H dx^2 f)
        - delta dx [dx^2, f] H f_t

Full model: D = (alpha1 + alpha2) Lambda^2, S = Lambda + beta Lambda^3 +
alpha1 alpha2 Lambda^4, alpha2 replaces delta in the two H f_t H dx^2 f terms,
alpha1 in the [dx^2, f] H f_t term, and two more terms appear:

        + alpha1 alpha2 dx [dx^2, f] Lambda dx f
        - alpha2 alpha2 dx [H, dx^2 f] dx^2 f
"""

from dataclasses import dataclass

import numpy as np
from loguru import logger

from spectral import (
    SpectralField,
    commutator_dxx,
    commutator_hilbert,
    dealiased_product,
    derivative,
    hilbert,
    lambda_pow,
)
from viscwave.params import ModelParams, Variant, WaveState


def linear_symbol(k, p: ModelParams) -> tuple:
    """(damping, stiffness) of the per-mode oscillator at wavenumber k.

    Works elementwise on arrays of wavenumbers.
    """
    kk = np.abs(np.asarray(k, dtype=np.float64))
    if p.variant == Variant.FULL:
        damping = (p.alpha1 + p.alpha2) * kk**2
        stiffness = kk + p.beta * kk**3 + p.alpha1 * p.alpha2 * kk**4
    else:
        damping = 2.0 * p.delta * kk**2
        stiffness = kk + p.beta * kk**3 + p.delta**2 * kk**4
    if np.ndim(damping) == 0:
        return float(damping), float(stiffness)
    return damping, stiffness


@dataclass(frozen=True)
class _Factors:
    """Linear images of f and f_t shared between the nonlinear terms."""

    f: SpectralField
    h_ft: SpectralField
    h_dxx_f: SpectralField
    lambda_f: SpectralField
    lambda3_f: SpectralField
    dxx_f: SpectralField
    lambda_dx_f: SpectralField

    @classmethod
    def of(cls, s: WaveState) -> "_Factors":
        dxx_f = derivative(s.f, 2)
        return cls(
            f=s.f,
            h_ft=hilbert(s.ft),
            h_dxx_f=hilbert(dxx_f),
            lambda_f=lambda_pow(s.f, 1.0),
            lambda3_f=lambda_pow(s.f, 3.0),
            dxx_f=dxx_f,
            lambda_dx_f=lambda_pow(derivative(s.f, 1), 1.0),
        )


def _shared_terms(x: _Factors, p: ModelParams, a_hh: float, a_dxx: float) -> SpectralField:
    """The six terms common to both models, without the eps prefactor.

    Args:
        x: Precomputed linear factors
        p: Model parameters (beta)
        a_hh: Coefficient of the two H f_t H dx^2 f terms
        a_dxx: Coefficient of the [dx^2, f] H f_t term
    """
    total = -lambda_pow(dealiased_product(x.h_ft, x.h_ft), 1.0)
    total = total + derivative(commutator_hilbert(x.f, x.lambda_f), 1)
    if p.beta != 0.0:
        total = total + p.beta * derivative(commutator_hilbert(x.f, x.lambda3_f), 1)
    if a_hh != 0.0:
        total = total + a_hh * derivative(commutator_hilbert(x.h_ft, x.h_dxx_f), 1)
        total = total + a_hh * lambda_pow(dealiased_product(x.h_ft, x.h_dxx_f), 1.0)
    if a_dxx != 0.0:
        total = total - a_dxx * derivative(commutator_dxx(x.f, x.h_ft), 1)
    return total


def full_model_extra_terms(s: WaveState, p: ModelParams) -> SpectralField:
    """eps (alpha1 alpha2 dx [dx^2, f] Lambda dx f - c dx [H, dx^2 f] dx^2 f).

    c is alpha2 alpha2 unless the last-term switch says alpha1 alpha2.
    """
    x = _Factors.of(_checked(s))
    return p.epsilon * _extra_terms(x, p)


def _extra_terms(x: _Factors, p: ModelParams) -> SpectralField:
    first = p.alpha1 * p.alpha2 * derivative(commutator_dxx(x.f, x.lambda_dx_f), 1)
    second = p.last_coefficient * derivative(commutator_hilbert(x.dxx_f, x.dxx_f), 1)
    return first - second


def _checked(s: WaveState) -> WaveState:
    if not s.is_mean_zero():
        logger.warning(
            f"State at t={s.t:.6g} has non-zero mean (f: {s.f.mean:.3e}, ft: {s.ft.mean:.3e}); projecting"
        )
        return s.mean_zero()
    return s


def _finish(total: SpectralField, p: ModelParams) -> SpectralField:
    out = p.epsilon * total
    if np.isfinite(out.coeffs[0]) and out.coeffs[0] != 0:
        raise AssertionError(f"Nonlinearity produced a mean mode {out.mean!r}")
    return out


def nonlinear_rhs_simplified(s: WaveState, p: ModelParams) -> SpectralField:
    """eps times the six nonlinear terms of the simplified model."""
    x = _Factors.of(_checked(s))
    return _finish(_shared_terms(x, p, a_hh=p.delta, a_dxx=p.delta), p)


def nonlinear_rhs_full(s: WaveState, p: ModelParams) -> SpectralField:
    """eps times the eight nonlinear terms of the full model."""
    x = _Factors.of(_checked(s))
    total = _shared_terms(x, p, a_hh=p.alpha2, a_dxx=p.alpha1) + _extra_terms(x, p)
    return _finish(total, p)


def rhs(s: WaveState, p: ModelParams) -> SpectralField:
    """Nonlinear forcing for the selected variant (zero for Linear)."""
    if p.variant == Variant.LINEAR:
        return SpectralField.zeros(s.grid)
    if p.variant == Variant.SIMPLIFIED:
        return nonlinear_rhs_simplified(s, p)
    return nonlinear_rhs_full(s, p)
