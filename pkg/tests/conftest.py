"""
Pytest configuration and shared fixtures
"""

import shutil
import tempfile
from pathlib import Path

import numpy as np
import pytest

from core.models import HeadKind, ModelSpec
from timeseries.dataset import Dataset, SyntheticConfig
from timeseries.synthetic import synthesize_dataset
from timeseries.windows import make_windows


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance checks")


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files"""
    temp_path = tempfile.mkdtemp()
    yield Path(temp_path)
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def synthetic_dataset():
    """Three synthetic years at 60N (2016 is a leap year, so it has a gap)"""
    return synthesize_dataset(SyntheticConfig(latitude=60.0, year_count=3, seed=7, start_year=2016))


@pytest.fixture(scope="session")
def five_year_dataset():
    return synthesize_dataset(SyntheticConfig(latitude=60.0, year_count=5, seed=3, start_year=2016))


@pytest.fixture
def small_dataset():
    """Contiguous 200-hour dataset with two feature channels"""
    return make_dataset(200, num_features=2, seed=5)


@pytest.fixture
def tiny_spec():
    """Small LSTM spec used by engine tests"""
    return ModelSpec(
        head=HeadKind.DETERMINISTIC,
        num_features=3,
        layers=2,
        hidden=4,
        window=6,
        horizon=2,
        batch_size=4,
        learning_rate=1e-2,
        max_epochs=3,
        patience=5,
        seed=0,
    )


# Helper functions for tests

def make_dataset(length, num_features=2, seed=0, start=420_000):
    """Contiguous hourly dataset with random non-negative values"""
    gen = np.random.default_rng(seed)
    clear_sky = np.abs(gen.normal(400.0, 200.0, length))
    target = clear_sky * gen.uniform(0.1, 1.0, length)
    features = np.column_stack([target] + [gen.normal(size=length) for _ in range(num_features - 1)])
    return Dataset(
        timestamps=np.arange(start, start + length, dtype=np.int64),
        features=features,
        target=target,
        clear_sky=clear_sky,
        feature_names=tuple(f"x{i}" for i in range(num_features)),
    )


def make_inputs(batch, window, features, horizon, seed=0):
    """Random scaled-looking inputs and clear sky for network tests"""
    gen = np.random.default_rng(seed)
    inputs = gen.uniform(0.0, 1.0, (batch, window, features))
    clear_sky = gen.uniform(0.5, 1.0, (batch, horizon))
    return inputs, clear_sky


def window_batch(dataset, window, horizon, stride=1):
    return make_windows(dataset, window, horizon, stride)
