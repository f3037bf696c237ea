"""
Synthetic high-latitude irradiance generator

Produces hourly years of clear-sky irradiance attenuated by an
autoregressive daylight cloud index.
"""

from typing import Optional

import numpy as np

from config.logging import get_logger
from config.settings import (
    DEFAULT_LATITUDE,
    DEFAULT_YEAR_COUNT,
    DEFAULT_CLOUD_AUTOCORRELATION,
    DEFAULT_CLOUD_FLOOR,
    DEFAULT_START_YEAR,
)
from core.exceptions import InvalidArgumentError
from core.validators import validate_latitude
from .dataset import Dataset, SyntheticConfig
from .solar import TIME_FEATURES, clearsky_curve, time_embeddings

logger = get_logger(__name__)

SYNTHETIC_FEATURES = ("ghi", "ghi_lag24", "clear_sky", "cloud_index") + TIME_FEATURES

CLOUD_INDEX_NOISE = 0.05


def default_synthetic_config(seed: int = 0, **overrides) -> SyntheticConfig:
    """SyntheticConfig populated from settings"""
    params = dict(
        latitude=DEFAULT_LATITUDE,
        year_count=DEFAULT_YEAR_COUNT,
        cloud_autocorrelation=DEFAULT_CLOUD_AUTOCORRELATION,
        cloud_floor=DEFAULT_CLOUD_FLOOR,
        seed=seed,
        start_year=DEFAULT_START_YEAR,
    )
    params.update(overrides)
    return SyntheticConfig(**params)


def hourly_timestamps(start_year: int, year_count: int) -> np.ndarray:
    """
    Hour stamps covering whole calendar years with 29 February removed

    Every year therefore has 8760 rows; the removed day leaves a 24 h gap.
    """
    start = np.datetime64(f"{int(start_year):04d}-01-01T00", "h")
    stop = np.datetime64(f"{int(start_year) + int(year_count):04d}-01-01T00", "h")
    stamps = np.arange(start, stop, dtype="datetime64[h]")
    days = stamps.astype("datetime64[D]")
    months = days.astype("datetime64[M]")
    day_of_month = (days - months).astype(np.int64) + 1
    month_of_year = months.astype(np.int64) % 12 + 1
    leap_day = (month_of_year == 2) & (day_of_month == 29)
    return stamps[~leap_day].astype(np.int64)


def lagged(values: np.ndarray, timestamps: np.ndarray, lag_hours: int) -> np.ndarray:
    """Value observed lag_hours earlier, NaN where that hour is absent"""
    wanted = timestamps - int(lag_hours)
    idx = np.searchsorted(timestamps, wanted)
    idx_safe = np.clip(idx, 0, len(timestamps) - 1)
    found = (idx < len(timestamps)) & (timestamps[idx_safe] == wanted)
    return np.where(found, values[idx_safe], np.nan)


def _validate_config(config: SyntheticConfig) -> None:
    validate_latitude(config.latitude)
    if int(config.year_count) <= 0:
        raise InvalidArgumentError(f"year_count must be positive, got {config.year_count}")
    if not 0.0 <= config.cloud_autocorrelation < 1.0:
        raise InvalidArgumentError(
            f"cloud_autocorrelation must lie in [0, 1), got {config.cloud_autocorrelation}"
        )
    if not 0.0 < config.cloud_floor <= 1.0:
        raise InvalidArgumentError(f"cloud_floor must lie in (0, 1], got {config.cloud_floor}")


def simulate_cloud_index(
    daylight: np.ndarray,
    rho: float,
    floor: float,
    noise: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Clear-sky index k_t, advanced only during daylight and held overnight

    k_{t+1} = rho * k_t + (1 - rho) + noise * eta_t, clamped to [floor, 1]
    """
    n = daylight.shape[0]
    shocks = rng.standard_normal(n)
    k = np.empty(n, dtype=float)
    current = 1.0
    for t in range(n):
        if daylight[t]:
            current = rho * current + (1.0 - rho) + noise * shocks[t]
            current = min(1.0, max(floor, current))
        k[t] = current
    return k


def synthesize_dataset(config: Optional[SyntheticConfig] = None) -> Dataset:
    """
    Generate a deterministic synthetic dataset

    Args:
        config: Generator parameters (settings defaults when None)

    Returns:
        Dataset with target = clear_sky * k_t and SYNTHETIC_FEATURES columns

    Raises:
        InvalidArgumentError: for out-of-range parameters
    """
    config = config or default_synthetic_config()
    _validate_config(config)
    rng = np.random.default_rng(config.seed)

    timestamps = hourly_timestamps(config.start_year, config.year_count)
    clear_sky = np.asarray(clearsky_curve(timestamps, config.latitude), dtype=float)
    daylight = clear_sky > 0.0

    k = simulate_cloud_index(
        daylight,
        rho=float(config.cloud_autocorrelation),
        floor=float(config.cloud_floor),
        noise=float(config.cloud_noise),
        rng=rng,
    )
    target = np.minimum(clear_sky * k, clear_sky)
    cloud_index = k + CLOUD_INDEX_NOISE * rng.standard_normal(k.shape[0])

    features = np.column_stack([
        target,
        lagged(target, timestamps, 24),
        clear_sky,
        cloud_index,
        time_embeddings(timestamps),
    ])

    logger.info(
        f"Synthesized {len(timestamps)} hours ({config.year_count} years from {config.start_year}) "
        f"at latitude {config.latitude}, seed={config.seed}"
    )
    return Dataset(
        timestamps=timestamps,
        features=features,
        target=target,
        clear_sky=clear_sky,
        feature_names=SYNTHETIC_FEATURES,
    )
