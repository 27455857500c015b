import numpy as np
import pytest

from spectral import Grid, random_mean_zero_field
from viscwave.models import DEFAULT_SEED
from viscwave.params import random_wave_state


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help=f"Seed for randomly generated fields (default: {DEFAULT_SEED})",
    )


@pytest.fixture(scope="session")
def seed(request):
    """Base seed shared by every random fixture."""
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed, request):
    """Generator seeded per test so results do not depend on test order."""
    return np.random.default_rng([seed, sum(map(ord, request.node.name))])


@pytest.fixture(scope="session")
def grid64():
    return Grid(64)


@pytest.fixture
def random_field(rng):
    """Factory for random mean-zero band-limited fields, |fhat(k)| ~ k^-3."""

    def make(grid, amplitude=1.0, exponent=3.0):
        return amplitude * random_mean_zero_field(grid, rng, exponent)

    return make


@pytest.fixture
def random_state(rng):
    """Factory for random mean-zero wave states."""

    def make(grid, amplitude=1.0):
        return random_wave_state(grid, rng, amplitude)

    return make
