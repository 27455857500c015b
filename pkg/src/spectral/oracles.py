"""Slow reference implementations used to cross-check the fast paths.

Everything here works mode by mode (O(N^2) sums, explicit loops) and shares
no code with the FFT-based operators it checks.
"""

import numpy as np
from scipy.linalg import expm

from spectral.grid import Grid, SpectralField, check_same_grid


def direct_dft(samples: np.ndarray, grid: Grid) -> np.ndarray:
    """fhat(k) = (1/N) sum_j s_j exp(-i k x_j), coefficients in FFT order."""
    values = np.asarray(samples, dtype=np.float64)
    kernel = np.exp(-1j * np.outer(grid.wavenumbers, grid.points))
    return kernel @ values / grid.N


def direct_synthesis(coeffs: np.ndarray, grid: Grid) -> np.ndarray:
    """s_j = sum_k fhat(k) exp(i k x_j) (complex, no symmetry assumed)."""
    kernel = np.exp(1j * np.outer(grid.points, grid.wavenumbers))
    return kernel @ np.asarray(coeffs, dtype=np.complex128)


def _modes(field: SpectralField) -> dict[int, complex]:
    return {int(k): complex(c) for k, c in zip(field.grid.wavenumbers, field.coeffs)}


def _from_modes(grid: Grid, modes: dict[int, complex]) -> SpectralField:
    coeffs = np.zeros(grid.N, dtype=np.complex128)
    for k, value in modes.items():
        coeffs[grid.index_of(k)] += value
    return SpectralField(grid, coeffs)


def truncated_convolution(a: SpectralField, b: SpectralField) -> SpectralField:
    """sum_m a(m) b(k-m) over retained modes, kept for |k| <= cutoff."""
    check_same_grid(a, b)
    cutoff = a.grid.dealias_cutoff
    am = {k: v for k, v in _modes(a).items() if abs(k) <= cutoff}
    bm = {k: v for k, v in _modes(b).items() if abs(k) <= cutoff}
    out: dict[int, complex] = {}
    for k in range(-cutoff, cutoff + 1):
        total = 0j
        for m, value in am.items():
            other = bm.get(k - m)
            if other is not None:
                total += value * other
        out[k] = total
    return _from_modes(a.grid, out)


def mode_multiplier(field: SpectralField, symbol, odd: bool = False) -> SpectralField:
    """Apply a scalar symbol one mode at a time; odd symbols drop Nyquist."""
    out = {}
    for k, value in _modes(field).items():
        if odd and k == field.grid.N // 2:
            out[k] = 0j
        else:
            out[k] = complex(symbol(k)) * value
    return _from_modes(field.grid, out)


def oracle_hilbert(field: SpectralField) -> SpectralField:
    return mode_multiplier(field, lambda k: -1j * (k > 0) + 1j * (k < 0), odd=True)


def oracle_lambda_pow(field: SpectralField, s: float) -> SpectralField:
    return mode_multiplier(field, lambda k: 0.0 if k == 0 else abs(k) ** s)


def oracle_derivative(field: SpectralField, n: int) -> SpectralField:
    return mode_multiplier(field, lambda k: (1j * k) ** n, odd=n % 2 == 1)


def oracle_commutator_hilbert(f: SpectralField, g: SpectralField) -> SpectralField:
    """H(f g) - f H(g) through truncated convolutions."""
    return oracle_hilbert(truncated_convolution(f, g)) - truncated_convolution(f, oracle_hilbert(g))


def oracle_commutator_dxx(f: SpectralField, g: SpectralField) -> SpectralField:
    """d^2(f g) - f d^2 g in direct (non-Leibniz) form."""
    return oracle_derivative(truncated_convolution(f, g), 2) - truncated_convolution(
        f, oracle_derivative(g, 2)
    )


def quadrature_sobolev_norm(field: SpectralField, s: float) -> float:
    """||Lambda^s f||_{L^2} by trapezoid quadrature of the synthesized samples."""
    lifted = field if s == 0 else oracle_lambda_pow(field, s)
    values = direct_synthesis(lifted.coeffs, field.grid)
    return float(np.sqrt(field.grid.spacing * np.sum(np.abs(values) ** 2)))


def generator(damping: float, stiffness: float) -> np.ndarray:
    """Companion matrix of fhat'' + damping fhat' + stiffness fhat = 0."""
    return np.array([[0.0, 1.0], [-stiffness, -damping]])


def expm_propagator(damping: float, stiffness: float, dt: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(exp(dt A), first Duhamel weight, second Duhamel weight) by scaling and squaring.

    The weights come from the exponential of the augmented block matrix
    [[A, e2, 0], [0, 0, 1], [0, 0, 0]].
    """
    augmented = np.zeros((4, 4))
    augmented[:2, :2] = generator(damping, stiffness)
    augmented[1, 2] = 1.0
    augmented[2, 3] = 1.0
    block = expm(dt * augmented)
    return block[:2, :2], block[:2, 2].copy(), block[:2, 3] / dt


def damped_oscillator(damping: float, stiffness: float, t: float, f0: complex, v0: complex) -> tuple[complex, complex]:
    """Closed-form underdamped solution (f(t), f'(t))."""
    mu = -damping / 2.0
    omega_sq = stiffness - damping**2 / 4.0
    if omega_sq <= 0:
        raise ValueError(f"Mode is not underdamped: omega^2 = {omega_sq}")
    omega = np.sqrt(omega_sq)
    c, s = np.cos(omega * t), np.sin(omega * t)
    decay = np.exp(mu * t)
    value = decay * (f0 * c + (v0 - mu * f0) * s / omega)
    rate = decay * (v0 * c + (-stiffness * f0 + mu * v0) * s / omega)
    return value, rate
