import numpy as np
import pytest

from viscwave.dispersion import (
    DISPERSION_COLUMNS,
    analytic_eigenvalues,
    dispersion_rows,
    fit_envelope_decay,
    fit_recurrence,
    measure_mode,
)
from viscwave.params import ModelParams, Variant


def linear(delta: float, beta: float) -> ModelParams:
    return ModelParams(delta=delta, beta=beta, epsilon=0.0, variant=Variant.LINEAR)


# Analytic eigenvalues

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_simplified_eigenvalues_are_exact(k):
    plus, minus = analytic_eigenvalues(k, linear(0.1, 0.0))
    assert plus.real == pytest.approx(-0.1 * k**2, rel=1e-14)
    assert plus.imag == pytest.approx(np.sqrt(k), rel=1e-14)
    assert minus == pytest.approx(plus.conjugate(), rel=1e-14)


def test_surface_tension_raises_the_frequency():
    plus, _ = analytic_eigenvalues(3, linear(0.01, 0.1))
    assert plus.imag == pytest.approx(np.sqrt(3 + 0.1 * 27), rel=1e-12)


def test_overdamped_full_mode_has_real_roots():
    p = ModelParams(delta=0.1, alpha1=0.0, alpha2=2.0, variant=Variant.FULL)
    plus, minus = analytic_eigenvalues(4, p)
    assert plus.imag == 0 and minus.imag == 0
    assert minus.real < plus.real < 0


# Fits

def test_recurrence_fit_recovers_synthetic_rates():
    lam = complex(-0.3, 1.7)
    h = 0.1
    t = h * np.arange(40)
    values = np.real(np.exp(lam * t))
    fitted_plus, fitted_minus = fit_recurrence(values, h)
    assert abs(fitted_plus - lam) < 1e-9
    assert abs(fitted_minus - lam.conjugate()) < 1e-9


def test_recurrence_fit_needs_four_samples():
    with pytest.raises(ValueError, match="Must be >= 4"):
        fit_recurrence(np.ones(3), 0.1)


def test_envelope_fit_of_an_exact_oscillator():
    damping, omega = 0.4, 2.0
    t = np.linspace(0.0, 10.0, 200)
    f = np.exp(-0.5 * damping * t) * np.cos(omega * t)
    ft = np.exp(-0.5 * damping * t) * (-0.5 * damping * np.cos(omega * t) - omega * np.sin(omega * t))
    assert fit_envelope_decay(t, f, ft, damping, omega) == pytest.approx(0.2, rel=1e-10)


# Measured modes

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_measured_mode_matches_analytic(k):
    m = measure_mode(k, linear(0.1, 0.0))
    assert m.measured_decay == pytest.approx(0.1 * k**2, abs=1e-6)
    assert m.measured_frequency == pytest.approx(np.sqrt(k), abs=1e-6)
    assert m.envelope_relative_error < 0.01


@pytest.mark.parametrize("delta", [0.0, 0.01, 0.1])
@pytest.mark.parametrize("beta", [0.0, 1e-5, 0.1])
def test_measured_frequency_across_regimes(delta, beta):
    for k in (1, 5, 8):
        m = measure_mode(k, linear(delta, beta))
        assert m.frequency_error < 1e-6
        assert m.envelope_relative_error < 0.01


def test_nonlinear_parameters_are_measured_linearly():
    m = measure_mode(2, ModelParams(delta=0.1, beta=0.0, epsilon=1.0))
    assert m.measured_frequency == pytest.approx(np.sqrt(2), abs=1e-6)


def test_measure_mode_rejects_the_mean():
    with pytest.raises(ValueError, match="Invalid k"):
        measure_mode(0, linear(0.1, 0.0))


# Table

def test_dispersion_rows():
    rows = dispersion_rows(linear(0.1, 0.0), 4)
    assert len(rows) == 4
    assert all(len(row) == len(DISPERSION_COLUMNS) for row in rows)
    assert [row[0] for row in rows] == [1, 2, 3, 4]
    for k, re_lambda, im_lambda, decay, frequency, *_ in rows:
        assert re_lambda == pytest.approx(-0.1 * k**2)
        assert im_lambda == pytest.approx(np.sqrt(k))
        assert decay == pytest.approx(0.1 * k**2, abs=1e-6)
        assert frequency == pytest.approx(np.sqrt(k), abs=1e-6)


def test_dispersion_rows_need_a_positive_kmax():
    with pytest.raises(ValueError, match="Invalid kmax"):
        dispersion_rows(linear(0.1, 0.0), 0)
