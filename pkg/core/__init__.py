"""
Core module for the solar irradiance forecaster
"""

from .exceptions import (
    ForecastError,
    InvalidArgumentError,
    InvalidParameterError,
    DatasetError,
    ScalerFitError,
    ConfigurationError,
    ModelStateError,
    TrainingError,
    DivergenceError,
    CheckpointError,
    CheckpointVersionError,
    CheckpointCorruptionError,
    DataIOError,
)
from .models import (
    HeadKind,
    Architecture,
    SelectionMetric,
    ModelSpec,
    ForecastOutput,
    PointForecast,
    QuantileForecast,
    ParametricForecast,
    EpochRecord,
    TrainingLog,
)
from .utils import (
    convert_numpy_types,
    safe_json_dumps,
    safe_json_loads,
    atomic_write_bytes,
    atomic_write_text,
    read_bytes,
)

__all__ = [
    # Exceptions
    "ForecastError",
    "InvalidArgumentError",
    "InvalidParameterError",
    "DatasetError",
    "ScalerFitError",
    "ConfigurationError",
    "ModelStateError",
    "TrainingError",
    "DivergenceError",
    "CheckpointError",
    "CheckpointVersionError",
    "CheckpointCorruptionError",
    "DataIOError",

    # Models
    "HeadKind",
    "Architecture",
    "SelectionMetric",
    "ModelSpec",
    "ForecastOutput",
    "PointForecast",
    "QuantileForecast",
    "ParametricForecast",
    "EpochRecord",
    "TrainingLog",

    # Utils
    "convert_numpy_types",
    "safe_json_dumps",
    "safe_json_loads",
    "atomic_write_bytes",
    "atomic_write_text",
    "read_bytes",
]
