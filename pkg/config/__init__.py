"""
Configuration module for the solar irradiance forecaster
"""

from .settings import (
    BASE_DIR,
    OUTPUT_DIR,
    DEFAULT_WINDOW,
    DEFAULT_HORIZON,
    DEFAULT_LAYERS,
    DEFAULT_HIDDEN,
    DEFAULT_LEARNING_RATE,
    DEFAULT_BATCH_SIZE,
    DEFAULT_QUANTILES,
    DEFAULT_COVERAGES,
    SCALER_OFFSET,
    NLL_PENALTY,
    get_config_summary,
)

__all__ = [
    "BASE_DIR",
    "OUTPUT_DIR",
    "DEFAULT_WINDOW",
    "DEFAULT_HORIZON",
    "DEFAULT_LAYERS",
    "DEFAULT_HIDDEN",
    "DEFAULT_LEARNING_RATE",
    "DEFAULT_BATCH_SIZE",
    "DEFAULT_QUANTILES",
    "DEFAULT_COVERAGES",
    "SCALER_OFFSET",
    "NLL_PENALTY",
    "get_config_summary",
]
