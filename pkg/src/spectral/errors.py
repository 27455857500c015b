"""Exceptions raised by the spectral field library."""


class SpectralError(ValueError):
    """Base class for invalid spectral-field operations."""


class InputShapeError(SpectralError):
    """Sample array does not match the grid resolution."""


class CorruptedFieldError(SpectralError):
    """Coefficients no longer describe a real-valued field."""


class GridMismatchError(SpectralError):
    """Two fields combined in one operation live on different grids."""


class SingularModeError(SpectralError):
    """A negative-order multiplier met a non-zero mean mode."""
