"""Fourier-multiplier operators and commutator brackets.

Symbols used by the viscous-wave model:

    Hilbert transform     H       -i sgn(k)
    Calderon operator     Lambda  |k|        (Lambda = H d/dx)
    fractional power      Lambda^s |k|^s
    derivative            d^n/dx^n (ik)^n
"""

from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from loguru import logger

from spectral.errors import SingularModeError
from spectral.grid import Grid, SpectralField, check_same_grid, dealiased_product

Parity = Literal["even", "odd", "none"]

_SYMBOL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class MultiplierSpec:
    """A Fourier multiplier m(k) acting diagonally on coefficients.

    Attributes:
        symbol: Vectorized map from integer wavenumbers to complex values
        parity: Symbol parity, "odd" (m(-k) = -m(k)), "even" (m(-k) = m(k))
            or "none"; odd symbols zero the Nyquist mode
        name: Label used in log messages
    """

    symbol: Callable[[np.ndarray], np.ndarray]
    parity: Parity
    name: str

    def table(self, grid: Grid) -> np.ndarray:
        """Symbol values on the grid's wavenumbers (validated, cached)."""
        return _symbol_table(self, grid)

    def apply(self, field: SpectralField) -> SpectralField:
        return field.with_coeffs(self.table(field.grid) * field.coeffs)


@lru_cache(maxsize=256)
def _symbol_table(spec: MultiplierSpec, grid: Grid) -> np.ndarray:
    k = grid.wavenumbers
    values = np.asarray(spec.symbol(k), dtype=np.complex128)
    mirrored = np.asarray(spec.symbol(-k), dtype=np.complex128)

    if not np.isfinite(values[0]):
        raise ValueError(f"Multiplier {spec.name}: symbol at k=0 is not finite")

    inner = np.ones(grid.N, dtype=bool)
    inner[grid.nyquist_index] = False
    scale = max(1.0, float(np.max(np.abs(values[inner]))))

    if np.max(np.abs(mirrored[inner] - np.conj(values[inner]))) > _SYMBOL_TOLERANCE * scale:
        raise ValueError(f"Multiplier {spec.name}: m(-k) != conj(m(k)), output would not be real")
    if spec.parity == "odd" and np.max(np.abs(mirrored[inner] + values[inner])) > _SYMBOL_TOLERANCE * scale:
        raise ValueError(f"Multiplier {spec.name}: declared odd but m(-k) != -m(k)")
    if spec.parity == "even" and np.max(np.abs(mirrored[inner] - values[inner])) > _SYMBOL_TOLERANCE * scale:
        raise ValueError(f"Multiplier {spec.name}: declared even but m(-k) != m(k)")

    nyquist = values[grid.nyquist_index]
    if spec.parity == "odd" or (spec.parity == "none" and nyquist.imag != 0.0):
        values[grid.nyquist_index] = 0.0

    logger.debug(f"Built symbol table for {spec.name} on N={grid.N}")
    values.setflags(write=False)
    return values


def _sign_symbol(k: np.ndarray) -> np.ndarray:
    return -1j * np.sign(k)


HILBERT = MultiplierSpec(symbol=_sign_symbol, parity="odd", name="hilbert")


@lru_cache(maxsize=64)
def lambda_multiplier(s: float) -> MultiplierSpec:
    """Lambda^s with the convention that the k = 0 symbol is 0."""

    def symbol(k: np.ndarray) -> np.ndarray:
        magnitude = np.abs(k).astype(np.float64)
        out = np.zeros_like(magnitude)
        nonzero = magnitude > 0
        out[nonzero] = magnitude[nonzero] ** s
        return out

    return MultiplierSpec(symbol=symbol, parity="even", name=f"lambda^{s:g}")


@lru_cache(maxsize=16)
def derivative_multiplier(n: int) -> MultiplierSpec:
    """(ik)^n; the identity for n = 0."""

    def symbol(k: np.ndarray) -> np.ndarray:
        return (1j * k.astype(np.float64)) ** n

    return MultiplierSpec(symbol=symbol, parity="odd" if n % 2 else "even", name=f"dx^{n}")


def hilbert(f: SpectralField) -> SpectralField:
    """Hilbert transform, symbol -i sgn(k) with sgn(0) = 0."""
    return HILBERT.apply(f)


def lambda_pow(f: SpectralField, s: float) -> SpectralField:
    """Fractional Calderon power Lambda^s, symbol |k|^s.

    Raises:
        SingularModeError: If s < 0 and f has a non-zero mean
    """
    if s < 0 and f.coeffs[0] != 0:
        raise SingularModeError(f"Lambda^{s:g} is singular at k=0 and f has mean {f.mean:.3e}")
    return lambda_multiplier(float(s)).apply(f)


def derivative(f: SpectralField, n: int = 1) -> SpectralField:
    """n-th spatial derivative, symbol (ik)^n."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError(f"Invalid derivative order: {n!r}. Must be a non-negative integer.")
    return derivative_multiplier(int(n)).apply(f)


def commutator_hilbert(f: SpectralField, g: SpectralField) -> SpectralField:
    """[H, f]g = H(f g) - f H(g), both products dealiased."""
    check_same_grid(f, g)
    return hilbert(dealiased_product(f, g)) - dealiased_product(f, hilbert(g))


def commutator_dxx(f: SpectralField, g: SpectralField) -> SpectralField:
    """[d^2/dx^2, f]g = d^2(f g)/dx^2 - f d^2g/dx^2.

    Evaluated in Leibniz form g f'' + 2 f' g'.
    """
    check_same_grid(f, g)
    return dealiased_product(g, derivative(f, 2)) + 2.0 * dealiased_product(
        derivative(f, 1), derivative(g, 1)
    )
