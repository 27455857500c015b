"""Fourier representation of real periodic fields on the torus [-pi, pi].

A field is stored by its complex Fourier coefficients in FFT order:
index j holds wavenumber j for j < N/2 and j - N for j > N/2; index N/2 is
the Nyquist mode, labelled +N/2. The convention is

    f(x) = sum_k fhat(k) exp(i k x),    fhat(k) = (1/N) sum_j f(x_j) exp(-i k x_j)

with collocation points x_j = -pi + 2 pi j / N, so the coefficients are the
true Fourier coefficients of the band-limited interpolant.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from loguru import logger

from spectral.errors import CorruptedFieldError, GridMismatchError, InputShapeError

SYMMETRY_TOLERANCE = 1e-10


def _read_only(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Grid:
    """Uniform collocation grid on [-pi, pi).

    Attributes:
        N: Number of collocation points (even, at least 8)
    """

    N: int

    def __post_init__(self):
        """Validate the resolution."""
        if isinstance(self.N, bool) or not isinstance(self.N, (int, np.integer)):
            raise ValueError(f"Invalid N: {self.N!r}. Must be an integer.")
        if self.N % 2 != 0:
            raise ValueError(f"Invalid N: {self.N}. Must be even.")
        if self.N < 8:
            raise ValueError(f"Invalid N: {self.N}. Must be >= 8.")

    @cached_property
    def points(self) -> np.ndarray:
        """Collocation points x_j = -pi + 2 pi j / N."""
        return _read_only(-np.pi + 2.0 * np.pi * np.arange(self.N) / self.N)

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.N

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Integer wavenumbers in FFT order, Nyquist labelled +N/2."""
        k = np.fft.fftfreq(self.N, d=1.0 / self.N).round().astype(np.int64)
        k[self.nyquist_index] = self.N // 2
        return _read_only(k)

    @cached_property
    def abs_wavenumbers(self) -> np.ndarray:
        return _read_only(np.abs(self.wavenumbers).astype(np.float64))

    @property
    def nyquist_index(self) -> int:
        return self.N // 2

    @property
    def dealias_cutoff(self) -> int:
        """Largest |k| kept by the 2/3 rule (strictly below N/3)."""
        return (self.N - 1) // 3

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        return _read_only(np.abs(self.wavenumbers) <= self.dealias_cutoff)

    @cached_property
    def mirror_index(self) -> np.ndarray:
        """Index of wavenumber -k for every index of wavenumber k."""
        return _read_only((-np.arange(self.N)) % self.N)

    @cached_property
    def phase(self) -> np.ndarray:
        """(-1)^k, the shift from x_0 = 0 to x_0 = -pi."""
        return _read_only(np.where(self.wavenumbers % 2 == 0, 1.0, -1.0))

    def index_of(self, k: int) -> int:
        """FFT-order index of wavenumber k (|k| <= N/2)."""
        if abs(k) > self.N // 2:
            raise ValueError(f"Invalid wavenumber: {k}. Must satisfy |k| <= {self.N // 2}.")
        return int(k % self.N)


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Complex Fourier coefficients of a real periodic function.

    Attributes:
        grid: Grid the field lives on
        coeffs: Coefficients in FFT order (read-only copy)
    """

    grid: Grid
    coeffs: np.ndarray
    # Physical samples the field was built from, kept so that writing the
    # field back out reproduces them bit for bit.
    samples: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128, copy=True)
        if coeffs.shape != (self.grid.N,):
            raise InputShapeError(
                f"Coefficient array has shape {coeffs.shape}, grid expects ({self.grid.N},)"
            )
        object.__setattr__(self, "coeffs", _read_only(coeffs))
        if self.samples is not None:
            object.__setattr__(self, "samples", _read_only(np.array(self.samples, dtype=np.float64)))

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros(grid.N, dtype=np.complex128))

    def with_coeffs(self, coeffs: np.ndarray) -> "SpectralField":
        """New field on the same grid."""
        return SpectralField(self.grid, coeffs)

    def coefficient(self, k: int) -> complex:
        return complex(self.coeffs[self.grid.index_of(k)])

    @property
    def mean(self) -> complex:
        return complex(self.coeffs[0])

    def symmetry_defect(self) -> float:
        """max_k |fhat(-k) - conj(fhat(k))|."""
        mirrored = self.coeffs[self.grid.mirror_index]
        return float(np.max(np.abs(mirrored - np.conj(self.coeffs))))

    def is_real(self, tolerance: float = SYMMETRY_TOLERANCE) -> bool:
        return self.symmetry_defect() <= tolerance * _scale(self.coeffs)

    def max_abs_difference(self, other: "SpectralField") -> float:
        check_same_grid(self, other)
        return float(np.max(np.abs(self.coeffs - other.coeffs)))

    def __add__(self, other: "SpectralField") -> "SpectralField":
        if not isinstance(other, SpectralField):
            return NotImplemented
        check_same_grid(self, other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        if not isinstance(other, SpectralField):
            return NotImplemented
        check_same_grid(self, other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __neg__(self) -> "SpectralField":
        return self.with_coeffs(-self.coeffs)

    def __mul__(self, scalar: float) -> "SpectralField":
        # Field-by-field products must go through dealiased_product.
        if isinstance(scalar, SpectralField) or not np.isscalar(scalar):
            return NotImplemented
        return self.with_coeffs(scalar * self.coeffs)

    __rmul__ = __mul__


def _scale(coeffs: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(coeffs))) if coeffs.size else 1.0)


def check_same_grid(a: SpectralField, b: SpectralField) -> None:
    """Raise GridMismatchError unless both fields share a resolution."""
    if a.grid != b.grid:
        raise GridMismatchError(f"Fields live on different grids: N={a.grid.N} vs N={b.grid.N}")


def forward_transform(samples: np.ndarray, grid: Grid) -> SpectralField:
    """Fourier coefficients of real collocation samples.

    Args:
        samples: N real values at grid.points
        grid: Target grid

    Returns:
        SpectralField with exactly conjugate-symmetric coefficients

    Raises:
        InputShapeError: If the sample count differs from grid.N
    """
    values = np.asarray(samples, dtype=np.float64)
    if values.shape != (grid.N,):
        raise InputShapeError(f"Expected {grid.N} samples, got array of shape {values.shape}")

    half = np.fft.rfft(values) / grid.N
    coeffs = np.empty(grid.N, dtype=np.complex128)
    coeffs[: grid.N // 2 + 1] = half
    coeffs[grid.N // 2 + 1 :] = np.conj(half[1 : grid.N // 2][::-1])
    coeffs *= grid.phase
    return SpectralField(grid, coeffs, samples=values)


def inverse_transform(field: SpectralField) -> np.ndarray:
    """Physical samples of a spectral field.

    Raises:
        CorruptedFieldError: If the coefficients are not conjugate symmetric
            or the synthesized samples carry an imaginary residue
    """
    if field.samples is not None:
        return field.samples.copy()

    scale = _scale(field.coeffs)
    defect = field.symmetry_defect()
    if defect > SYMMETRY_TOLERANCE * scale:
        raise CorruptedFieldError(f"Conjugate symmetry violated by {defect:.3e}")

    values = field.grid.N * np.fft.ifft(field.grid.phase * field.coeffs)
    residue = float(np.max(np.abs(values.imag)))
    if residue > SYMMETRY_TOLERANCE * scale:
        raise CorruptedFieldError(f"Imaginary residue {residue:.3e} in synthesized samples")
    return values.real.copy()


def project_mean_zero(field: SpectralField) -> SpectralField:
    """Remove the k = 0 mode."""
    coeffs = field.coeffs.copy()
    coeffs[0] = 0.0
    return field.with_coeffs(coeffs)


def dealias(field: SpectralField) -> SpectralField:
    """Zero every mode outside the 2/3-rule band."""
    return field.with_coeffs(np.where(field.grid.dealias_mask, field.coeffs, 0.0))


def dealiased_product(a: SpectralField, b: SpectralField) -> SpectralField:
    """Pointwise product a*b with 2/3-rule truncation before and after.

    Raises:
        GridMismatchError: If a and b live on different grids
    """
    check_same_grid(a, b)
    product = inverse_transform(dealias(a)) * inverse_transform(dealias(b))
    return dealias(forward_transform(product, a.grid))


def random_mean_zero_field(
    grid: Grid,
    rng: np.random.Generator,
    exponent: float = 3.0,
    kmax: int | None = None,
) -> SpectralField:
    """Random real band-limited field with |fhat(k)| ~ k^-exponent.

    For k = 1..kmax (default: the dealiasing cutoff) two standard normals
    a, b are drawn in order of increasing k and fhat(k) = k^-exponent (a + ib)/2.
    """
    kmax = grid.dealias_cutoff if kmax is None else kmax
    if not 1 <= kmax <= grid.N // 2 - 1:
        raise ValueError(f"Invalid kmax: {kmax}. Must be in 1..{grid.N // 2 - 1}.")
    draws = rng.standard_normal((kmax, 2))
    coeffs = np.zeros(grid.N, dtype=np.complex128)
    for k in range(1, kmax + 1):
        value = k ** (-exponent) * complex(draws[k - 1, 0], draws[k - 1, 1]) / 2.0
        coeffs[k] = value
        coeffs[grid.N - k] = np.conj(value)
    logger.debug(f"Random field on N={grid.N}: kmax={kmax}, exponent={exponent}")
    return SpectralField(grid, coeffs)
