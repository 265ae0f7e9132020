"""Shared fixtures for the lkbandit test suite."""

import os
from pathlib import Path

import numpy as np
import pytest

from lkbandit.tsplib import Instance

DATA_DIR = Path(__file__).parent / "test-data"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: benchmark-scale runs that need real TSPLIB files")


def random_instance(seed: int, n: int, scale: int = 1000) -> Instance:
    """Uniform random EUC_2D instance with integer coordinates."""
    rng = np.random.default_rng(seed)
    coords = rng.integers(0, scale, size=(n, 2))
    return Instance.from_coords(f"random{seed}_{n}", coords)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def square() -> Instance:
    """Corners of a 10 x 10 square; optimum 40."""
    return Instance.from_coords("square", [[0, 0], [10, 0], [10, 10], [0, 10]])


@pytest.fixture
def tsplib_dir() -> Path:
    """Directory of real TSPLIB files, or skip."""
    env_dir = os.environ.get("LKBANDIT_TSPLIB_DIR")
    if not env_dir or not Path(env_dir).is_dir():
        pytest.skip("LKBANDIT_TSPLIB_DIR environment variable not set")
    return Path(env_dir)
