"""
Time-series data module: solar geometry, synthetic generation, preprocessing, windowing
"""

from .dataset import Dataset, IrradianceRecord, SyntheticConfig
from .solar import (
    TIME_FEATURES,
    embed_time,
    time_embeddings,
    solar_elevation,
    clearsky_from_elevation,
    clearsky_curve,
)
from .synthetic import SYNTHETIC_FEATURES, default_synthetic_config, synthesize_dataset
from .preprocessing import (
    MinMaxScaler,
    fill_missing_zeros,
    scaler_fit,
    scaler_apply,
    scaler_invert,
    scale_dataset,
    select_features,
    single_station_features,
)
from .windows import (
    WindowedSample,
    WindowBatch,
    window_count,
    make_windows,
    split_by_year,
    year_correlations,
    suggest_split_years,
)
from .io import load_csv, save_csv

__all__ = [
    "Dataset",
    "IrradianceRecord",
    "SyntheticConfig",
    "TIME_FEATURES",
    "embed_time",
    "time_embeddings",
    "solar_elevation",
    "clearsky_from_elevation",
    "clearsky_curve",
    "SYNTHETIC_FEATURES",
    "default_synthetic_config",
    "synthesize_dataset",
    "MinMaxScaler",
    "fill_missing_zeros",
    "scaler_fit",
    "scaler_apply",
    "scaler_invert",
    "scale_dataset",
    "select_features",
    "single_station_features",
    "WindowedSample",
    "WindowBatch",
    "window_count",
    "make_windows",
    "split_by_year",
    "year_correlations",
    "suggest_split_years",
    "load_csv",
    "save_csv",
]
