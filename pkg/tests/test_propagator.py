import numpy as np
import pytest
from scipy.integrate import quad

from spectral import Grid
from spectral.oracles import damped_oscillator, expm_propagator
from viscwave.model import linear_symbol
from viscwave.params import ModelParams, Variant
from viscwave.propagator import PropagatorTable, build_propagator, oscillator_entries


def entries_matrix(e: dict, i: int = 0) -> np.ndarray:
    return np.array([[e["e00"][i], e["e01"][i]], [e["e10"][i], e["e11"][i]]])


# Free particle and argument checks

def test_zero_mode_is_a_free_particle():
    prop = build_propagator(0, 0.5, ModelParams(delta=0.1, beta=0.01))
    assert np.array_equal(prop.matrix, np.array([[1.0, 0.5], [0.0, 1.0]]))
    assert prop.duhamel == pytest.approx([0.125, 0.5], abs=1e-15)


def test_zero_dt_is_rejected():
    with pytest.raises(ValueError, match="Must be non-zero"):
        oscillator_entries(0.1, 1.0, 0.0)


def test_zero_stiffness_with_damping_is_rejected():
    with pytest.raises(ValueError, match="Zero stiffness"):
        oscillator_entries(0.1, 0.0, 0.1)


# Closed form against scaling-and-squaring

@pytest.mark.parametrize("k", [1, 2, 5, 10, 21])
@pytest.mark.parametrize("dt", [1e-3, 0.1, 1.0])
def test_underdamped_matches_expm(k, dt):
    p = ModelParams(delta=0.05, beta=1e-3)
    prop = build_propagator(k, dt, p)
    matrix, w1, w2 = expm_propagator(prop.damping, prop.stiffness, dt)
    assert np.max(np.abs(prop.matrix - matrix)) < 1e-12
    assert np.max(np.abs(prop.duhamel - w1)) < 1e-12
    assert np.max(np.abs(prop.duhamel2 - w2)) < 1e-12


@pytest.mark.parametrize(
    "damping,stiffness",
    [(3.0, 1.0), (10.0, 2.0), (2.0, 1.0), (2.0, 1.0 + 1e-10), (0.0, 4.0)],
)
@pytest.mark.parametrize("dt", [-0.2, 0.05, 0.7])
def test_every_damping_regime_matches_expm(damping, stiffness, dt):
    e = oscillator_entries(damping, stiffness, dt)
    matrix, w1, w2 = expm_propagator(damping, stiffness, dt)
    assert np.max(np.abs(entries_matrix(e) - matrix)) < 1e-12
    assert np.max(np.abs(np.array([e["w1_0"][0], e["w1_1"][0]]) - w1)) < 1e-12
    assert np.max(np.abs(np.array([e["w2_0"][0], e["w2_1"][0]]) - w2)) < 1e-12


@pytest.mark.parametrize("k", [32, 100])
@pytest.mark.parametrize("dt", [1e-3, 0.05])
def test_strongly_overdamped_weights_match_quadrature(k, dt):
    p = ModelParams(delta=1.0, alpha1=0.0, alpha2=2.0, variant=Variant.FULL)
    prop = build_propagator(k, dt, p)
    a, b = prop.damping, prop.stiffness
    fast = -0.5 * a - np.sqrt(0.25 * a * a - b)
    slow = b / fast

    def response(tau):
        return (np.exp(slow * tau) - np.exp(fast * tau)) / (slow - fast)

    layer = min(0.5 * dt, 40.0 / abs(fast))
    first, _ = quad(response, 0.0, dt, points=[layer], epsabs=0.0, epsrel=1e-12, limit=200)
    second, _ = quad(lambda s: response(dt - s) * s, 0.0, dt, points=[dt - layer], epsabs=0.0, epsrel=1e-12, limit=200)
    assert prop.duhamel[0] == pytest.approx(first, rel=1e-9)
    assert prop.duhamel2[0] == pytest.approx(second / dt, rel=1e-9)
    assert prop.duhamel2[1] == pytest.approx(first / dt, rel=1e-9)


def test_propagator_matches_damped_oscillator():
    p = ModelParams(delta=0.1, beta=0.01)
    for k in (1, 2, 3):
        for dt in (1e-3, 0.1, 1.0):
            prop = build_propagator(k, dt, p)
            value, rate = damped_oscillator(prop.damping, prop.stiffness, dt, 0.3 + 0.1j, -0.2j)
            stepped = prop.matrix @ np.array([0.3 + 0.1j, -0.2j])
            assert abs(stepped[0] - value) < 1e-14
            assert abs(stepped[1] - rate) < 1e-14


# Spectral properties

def test_eigenvalues_solve_the_characteristic_polynomial():
    prop = build_propagator(3, 0.1, ModelParams(delta=0.1, beta=0.01))
    for lam in prop.eigenvalues:
        assert abs(lam**2 + prop.damping * lam + prop.stiffness) < 1e-12


@pytest.mark.parametrize("k", [1, 4, 16])
def test_spectral_radius_is_the_damping_rate(k):
    delta, dt = 0.01, 0.3
    prop = build_propagator(k, dt, ModelParams(delta=delta, beta=1e-3))
    assert prop.spectral_radius == pytest.approx(np.exp(-delta * k**2 * dt), rel=1e-10)


def test_inviscid_propagator_is_reversible():
    p = ModelParams(delta=0.0, beta=0.01, variant=Variant.LINEAR)
    for k in (1, 5, 20):
        forward = build_propagator(k, 0.4, p).matrix
        backward = build_propagator(k, -0.4, p).matrix
        assert np.max(np.abs(forward @ backward - np.eye(2))) < 1e-12
        assert np.linalg.det(forward) == pytest.approx(1.0, abs=1e-12)


def test_negative_dt_inverts_a_damped_step():
    p = ModelParams(delta=0.05, beta=1e-3)
    forward = build_propagator(3, 0.2, p).matrix
    backward = build_propagator(3, -0.2, p).matrix
    assert np.max(np.abs(forward @ backward - np.eye(2))) < 1e-12


# Tables

def test_table_matches_single_mode_propagators():
    grid = Grid(32)
    p = ModelParams(delta=0.05, beta=1e-3, alpha1=0.02, alpha2=0.08, variant=Variant.FULL)
    table = PropagatorTable(grid, p, 0.1)
    f = np.zeros(32, dtype=complex)
    ft = np.zeros(32, dtype=complex)
    f[grid.index_of(4)] = 1.0
    ft[grid.index_of(-7)] = 1.0
    new_f, new_ft = table.propagate(f, ft)
    four = build_propagator(4, 0.1, p).matrix
    seven = build_propagator(-7, 0.1, p).matrix
    assert new_f[grid.index_of(4)] == pytest.approx(four[0, 0], abs=1e-15)
    assert new_ft[grid.index_of(4)] == pytest.approx(four[1, 0], abs=1e-15)
    assert new_f[grid.index_of(-7)] == pytest.approx(seven[0, 1], abs=1e-15)
    assert new_ft[grid.index_of(-7)] == pytest.approx(seven[1, 1], abs=1e-15)


def test_table_entries_are_read_only():
    table = PropagatorTable(Grid(16), ModelParams(delta=0.1), 0.05)
    with pytest.raises(ValueError):
        table._entries["e00"][0] = 2.0


def test_table_uses_the_variant_symbol():
    grid = Grid(16)
    p = ModelParams(delta=0.05, alpha1=0.01, alpha2=0.2, variant=Variant.FULL)
    damping, stiffness = linear_symbol(grid.abs_wavenumbers, p)
    table = PropagatorTable(grid, p, 0.3)
    expected = oscillator_entries(damping, stiffness, 0.3)
    for key, values in expected.items():
        assert np.array_equal(table._entries[key], values)
