"""Pseudospectral field library for periodic functions on [-pi, pi]."""

from .errors import (
    CorruptedFieldError,
    GridMismatchError,
    InputShapeError,
    SingularModeError,
    SpectralError,
)
from .grid import (
    Grid,
    SpectralField,
    dealias,
    dealiased_product,
    forward_transform,
    inverse_transform,
    project_mean_zero,
    random_mean_zero_field,
)
from .operators import (
    MultiplierSpec,
    commutator_dxx,
    commutator_hilbert,
    derivative,
    hilbert,
    lambda_pow,
)

__all__ = [
    "CorruptedFieldError",
    "GridMismatchError",
    "InputShapeError",
    "SingularModeError",
    "SpectralError",
    "Grid",
    "SpectralField",
    "dealias",
    "dealiased_product",
    "forward_transform",
    "inverse_transform",
    "project_mean_zero",
    "random_mean_zero_field",
    "MultiplierSpec",
    "commutator_dxx",
    "commutator_hilbert",
    "derivative",
    "hilbert",
    "lambda_pow",
]
