import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral import Grid, SpectralField, forward_transform
from viscwave.checks.check_08 import dropped_terms
from viscwave.model import (
    full_model_extra_terms,
    linear_symbol,
    nonlinear_rhs_full,
    nonlinear_rhs_simplified,
    rhs,
)
from viscwave.params import ModelParams, Variant, WaveState, random_wave_state


def cos_sin_state(grid: Grid, a: float, b: float) -> WaveState:
    """f = a cos x, f_t = b sin x."""
    x = grid.points
    return WaveState(forward_transform(a * np.cos(x), grid), forward_transform(b * np.sin(x), grid))


# Linear symbol

def test_linear_symbol_simplified_at_k1():
    damping, stiffness = linear_symbol(1, ModelParams(delta=0.1, beta=0.01))
    assert damping == pytest.approx(0.2, abs=1e-15)
    assert stiffness == pytest.approx(1.02, abs=1e-15)


def test_linear_symbol_simplified_at_k2():
    damping, stiffness = linear_symbol(2, ModelParams(delta=0.1, beta=0.01))
    assert damping == pytest.approx(0.8, abs=1e-15)
    assert stiffness == pytest.approx(2.24, abs=1e-14)


def test_linear_symbol_full_uses_both_alphas():
    p = ModelParams(delta=0.1, beta=0.0, alpha1=0.1, alpha2=0.3, variant=Variant.FULL)
    damping, stiffness = linear_symbol(2, p)
    assert damping == pytest.approx(1.6, abs=1e-15)
    assert stiffness == pytest.approx(2.0 + 0.03 * 16, abs=1e-14)


def test_linear_symbol_is_even_and_vanishes_at_zero():
    p = ModelParams(delta=0.2, beta=0.05)
    k = np.arange(-10, 11)
    damping, stiffness = linear_symbol(k, p)
    assert np.array_equal(damping, damping[::-1])
    assert np.array_equal(stiffness, stiffness[::-1])
    assert damping[10] == 0 and stiffness[10] == 0


# Model parameters

def test_simplified_variant_rejects_unequal_alphas():
    with pytest.raises(ValueError, match="alpha1 = alpha2 = delta"):
        ModelParams(delta=0.1, alpha1=0.1, alpha2=0.2, variant=Variant.SIMPLIFIED)


def test_alphas_default_to_delta():
    p = ModelParams(delta=0.3, variant=Variant.FULL)
    assert p.alpha1 == p.alpha2 == 0.3


def test_negative_coefficients_are_rejected():
    with pytest.raises(ValueError):
        ModelParams(delta=-0.1)
    with pytest.raises(ValueError):
        ModelParams(beta=-1.0)


def test_last_term_switch():
    p = ModelParams(delta=0.1, alpha1=0.2, alpha2=0.5, variant=Variant.FULL)
    assert p.last_coefficient == pytest.approx(0.25)
    switched = p.model_copy(update={"last_term_coefficient": "alpha1_alpha2"})
    assert switched.last_coefficient == pytest.approx(0.1)


def test_variant_codes_round_trip():
    for variant in Variant:
        assert Variant.from_code(variant.code) is variant
    with pytest.raises(ValueError, match="Unknown variant code"):
        Variant.from_code(7)


# Nonlinear right-hand side

def test_rhs_of_zero_state_is_zero(grid64):
    zero = WaveState(SpectralField.zeros(grid64), SpectralField.zeros(grid64))
    for variant in (Variant.SIMPLIFIED, Variant.FULL):
        p = ModelParams(delta=0.1, beta=0.01, variant=variant)
        assert np.all(rhs(zero, p).coeffs == 0)


def test_linear_variant_has_no_forcing(grid64, random_state):
    out = rhs(random_state(grid64), ModelParams(delta=0.1, variant=Variant.LINEAR))
    assert np.all(out.coeffs == 0)


@pytest.mark.parametrize("variant", [Variant.SIMPLIFIED, Variant.FULL])
def test_rhs_is_mean_zero_and_real(grid64, random_state, variant):
    p = ModelParams(delta=0.05, beta=1e-3, variant=variant)
    for _ in range(20):
        out = rhs(random_state(grid64), p)
        assert out.coefficient(0) == 0
        assert out.is_real()


def test_single_cosine_height_is_not_forced(grid64):
    p = ModelParams(delta=0.1, beta=0.01, epsilon=0.5)
    out = nonlinear_rhs_simplified(cos_sin_state(grid64, a=0.3, b=0.0), p)
    assert np.max(np.abs(out.coeffs)) < 1e-14


def test_velocity_squared_term(grid64):
    """f = 0, f_t = b sin x leaves -eps Lambda((H f_t)^2) = -eps b^2 cos 2x."""
    b, eps = 0.4, 0.5
    p = ModelParams(delta=0.1, beta=0.01, epsilon=eps)
    out = nonlinear_rhs_simplified(cos_sin_state(grid64, a=0.0, b=b), p)
    expected = forward_transform(-eps * b**2 * np.cos(2 * grid64.points), grid64)
    assert out.max_abs_difference(expected) < 1e-15


def test_full_model_extra_terms_for_single_cosine(grid64):
    """f = a cos x: only the [dx^2, f] Lambda dx f term survives, 3 a^2 cos 2x."""
    a, eps = 0.3, 0.5
    p = ModelParams(delta=0.1, alpha1=0.2, alpha2=0.4, epsilon=eps, variant=Variant.FULL)
    out = full_model_extra_terms(cos_sin_state(grid64, a=a, b=0.0), p)
    expected = forward_transform(eps * 0.2 * 0.4 * 3 * a**2 * np.cos(2 * grid64.points), grid64)
    assert out.max_abs_difference(expected) < 1e-15


def test_full_minus_simplified_is_the_dropped_terms(grid64, random_state):
    simplified = ModelParams(delta=0.05, beta=1e-3, epsilon=0.7)
    full = simplified.model_copy(update={"variant": Variant.FULL})
    for _ in range(10):
        state = random_state(grid64)
        difference = nonlinear_rhs_full(state, full) - nonlinear_rhs_simplified(state, simplified)
        assert difference.max_abs_difference(dropped_terms(state.f, simplified)) < 1e-12


def test_f_zero_removes_every_height_term(grid64, random_field):
    """With f = 0 only -eps Lambda((H f_t)^2) remains, in both variants."""
    ft = random_field(grid64)
    state = WaveState(SpectralField.zeros(grid64), ft)
    simplified = ModelParams(delta=0.05, beta=1e-3, epsilon=0.7)
    full = ModelParams(delta=0.05, alpha1=0.02, alpha2=0.08, beta=1e-3, epsilon=0.7, variant=Variant.FULL)
    assert nonlinear_rhs_full(state, full).max_abs_difference(nonlinear_rhs_simplified(state, simplified)) < 1e-14


def test_non_mean_zero_input_is_projected(grid64):
    p = ModelParams(delta=0.1, epsilon=0.5)
    shifted = WaveState(
        forward_transform(0.7 + 0.3 * np.cos(grid64.points), grid64),
        forward_transform(0.4 * np.sin(grid64.points), grid64),
    )
    projected = shifted.mean_zero()
    assert nonlinear_rhs_simplified(shifted, p).max_abs_difference(nonlinear_rhs_simplified(projected, p)) == 0.0


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    scale=st.floats(min_value=-3.0, max_value=3.0),
    eps=st.floats(min_value=0.0, max_value=2.0),
)
def test_rhs_is_quadratic_and_linear_in_eps(seed, scale, eps):
    grid = Grid(32)
    state = random_wave_state(grid, np.random.default_rng(seed))
    for variant in (Variant.SIMPLIFIED, Variant.FULL):
        unit = ModelParams(delta=0.05, beta=1e-3, epsilon=1.0, variant=variant)
        p = unit.model_copy(update={"epsilon": eps})
        base = rhs(state, unit)
        assert rhs(state.scaled(scale), unit).max_abs_difference(scale**2 * base) < 1e-11
        assert rhs(state, p).max_abs_difference(eps * base) < 1e-11
