"""
Input validators shared by the data, model and CLI layers
"""

from pathlib import Path
from typing import Iterable, Tuple, Union

import numpy as np

from config.logging import get_logger
from .exceptions import ConfigurationError, DataIOError, InvalidArgumentError

logger = get_logger(__name__)


def validate_latitude(latitude: float) -> float:
    """
    Check a latitude in degrees

    Raises:
        InvalidArgumentError: outside [-90, 90] or not finite
    """
    value = float(latitude)
    if not np.isfinite(value) or value < -90.0 or value > 90.0:
        raise InvalidArgumentError(f"Latitude must be within [-90, 90] degrees, got {latitude}")
    return value


def validate_probability_grid(levels: Iterable[float], name: str = "levels") -> Tuple[float, ...]:
    """
    Check an ordered grid of probabilities inside (0, 1)

    Raises:
        InvalidArgumentError: if a level falls outside (0, 1) or the grid is not increasing
    """
    grid = tuple(float(p) for p in levels)
    if not grid:
        raise InvalidArgumentError(f"{name} must not be empty")
    arr = np.asarray(grid)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise InvalidArgumentError(f"{name} must lie in (0, 1), got {list(grid)}")
    if np.any(np.diff(arr) <= 0.0):
        raise InvalidArgumentError(f"{name} must be strictly increasing, got {list(grid)}")
    return grid


def validate_quantile_set(quantiles: Iterable[float], require_median: bool = True) -> Tuple[float, ...]:
    """
    Check a quantile set for the quantile head

    Raises:
        ConfigurationError: when the set is malformed or misses 0.5
    """
    try:
        grid = validate_probability_grid(quantiles, name="quantiles")
    except InvalidArgumentError as e:
        raise ConfigurationError(str(e))
    if require_median and not any(abs(q - 0.5) < 1e-12 for q in grid):
        raise ConfigurationError(
            f"Quantile set {list(grid)} must contain 0.5 for clear-sky injection"
        )
    return grid


def validate_output_path(path: Union[str, Path]) -> Path:
    """
    Resolve an output path and make sure its directory exists

    Raises:
        DataIOError: if the parent directory cannot be created
    """
    target = Path(path).expanduser().resolve()
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise DataIOError(target, f"cannot create directory: {e}")
    return target


def validate_input_path(path: Union[str, Path]) -> Path:
    """
    Resolve an input file path

    Raises:
        DataIOError: if the file does not exist
    """
    target = Path(path).expanduser().resolve()
    if not target.is_file():
        raise DataIOError(target, "file not found")
    return target
