"""
Preprocessing: missing-value handling, min-max scaling and feature selection
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from config.logging import get_logger
from config.settings import SCALER_OFFSET
from core.exceptions import DatasetError, InvalidArgumentError, ModelStateError, ScalerFitError
from .dataset import Dataset
from .solar import TIME_FEATURES

logger = get_logger(__name__)

TARGET_CHANNEL = "target"


def fill_missing_zeros(data: Union[Dataset, np.ndarray]) -> Union[Dataset, np.ndarray]:
    """
    Replace every missing value (NaN) with 0

    Accepts either a Dataset or a raw array; returns the same kind.
    """
    if isinstance(data, Dataset):
        if not data.has_missing():
            return data
        missing = int(np.isnan(data.features).sum() + np.isnan(data.target).sum()
                      + np.isnan(data.clear_sky).sum())
        logger.debug(f"Filling {missing} missing values with zeros")
        return data.replace(
            features=np.nan_to_num(data.features, nan=0.0),
            target=np.nan_to_num(data.target, nan=0.0),
            clear_sky=np.nan_to_num(data.clear_sky, nan=0.0),
        )
    arr = np.asarray(data, dtype=float)
    return np.where(np.isnan(arr), 0.0, arr)


@dataclass
class MinMaxScaler:
    """
    Per-channel min-max scaler with a positive output offset

    apply maps min -> offset and max -> 1 + offset.
    """
    channels: Tuple[str, ...] = field(default_factory=tuple)
    minimum: Optional[np.ndarray] = None
    maximum: Optional[np.ndarray] = None
    offset: float = SCALER_OFFSET

    @property
    def is_fitted(self) -> bool:
        return self.minimum is not None and self.maximum is not None

    def fit(self, values: np.ndarray, channels: Optional[Sequence[str]] = None) -> "MinMaxScaler":
        """
        Fit per-channel bounds

        Args:
            values: N x C array (or length-N vector for a single channel)
            channels: Channel names used in error messages

        Raises:
            ScalerFitError: if a channel has fewer than 2 distinct values
        """
        if not self.offset > 0:
            raise InvalidArgumentError(f"Scaler offset must be positive, got {self.offset}")
        arr = np.asarray(values, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        names = tuple(channels) if channels is not None else tuple(f"channel_{i}" for i in range(arr.shape[1]))
        if len(names) != arr.shape[1]:
            raise InvalidArgumentError(f"{arr.shape[1]} columns but {len(names)} channel names")
        if arr.shape[0] == 0:
            raise ScalerFitError(names[0] if names else "?", "Cannot fit scaler on an empty array")

        lo = np.nanmin(arr, axis=0)
        hi = np.nanmax(arr, axis=0)
        for i, name in enumerate(names):
            if not np.isfinite(lo[i]) or not np.isfinite(hi[i]) or not hi[i] > lo[i]:
                raise ScalerFitError(name)

        self.channels = names
        self.minimum = lo
        self.maximum = hi
        return self

    def _check(self, arr: np.ndarray) -> None:
        if not self.is_fitted:
            raise ModelStateError("Scaler used before fit")
        if arr.shape[-1] != self.minimum.shape[0]:
            raise InvalidArgumentError(
                f"Scaler fitted on {self.minimum.shape[0]} channels, got {arr.shape[-1]}"
            )

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Scale values; the last axis indexes channels unless the scaler has one channel"""
        arr = np.asarray(values, dtype=float)
        if self.is_fitted and self.minimum.shape[0] == 1:
            return (arr - self.minimum[0]) / (self.maximum[0] - self.minimum[0]) + self.offset
        self._check(arr)
        return (arr - self.minimum) / (self.maximum - self.minimum) + self.offset

    def invert(self, scaled: np.ndarray) -> np.ndarray:
        """Map scaled values back to original units"""
        arr = np.asarray(scaled, dtype=float)
        if self.is_fitted and self.minimum.shape[0] == 1:
            return (arr - self.offset) * (self.maximum[0] - self.minimum[0]) + self.minimum[0]
        self._check(arr)
        return (arr - self.offset) * (self.maximum - self.minimum) + self.minimum

    def scale_factor(self, channel: int = 0) -> float:
        """max - min of a channel; converts scaled spreads to original units"""
        if not self.is_fitted:
            raise ModelStateError("Scaler used before fit")
        return float(self.maximum[channel] - self.minimum[channel])

    def to_dict(self) -> Dict:
        if not self.is_fitted:
            raise ModelStateError("Cannot serialize an unfitted scaler")
        return {
            "channels": list(self.channels),
            "min": [float(v) for v in self.minimum],
            "max": [float(v) for v in self.maximum],
            "offset": float(self.offset),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "MinMaxScaler":
        try:
            return cls(
                channels=tuple(data["channels"]),
                minimum=np.asarray(data["min"], dtype=float),
                maximum=np.asarray(data["max"], dtype=float),
                offset=float(data["offset"]),
            )
        except (KeyError, TypeError) as e:
            raise DatasetError(f"Malformed scaler description: {e}")


def scaler_fit(dataset: Dataset) -> Tuple[MinMaxScaler, MinMaxScaler]:
    """
    Fit the feature scaler and the target scaler on a dataset

    Returns:
        (feature scaler over every feature channel, target scaler)
    """
    data = fill_missing_zeros(dataset)
    feature_scaler = MinMaxScaler().fit(data.features, data.feature_names)
    target_scaler = MinMaxScaler().fit(data.target, (TARGET_CHANNEL,))
    return feature_scaler, target_scaler


def scaler_apply(scaler: MinMaxScaler, values: np.ndarray) -> np.ndarray:
    return scaler.apply(values)


def scaler_invert(scaler: MinMaxScaler, scaled: np.ndarray) -> np.ndarray:
    return scaler.invert(scaled)


def scale_dataset(dataset: Dataset, feature_scaler: MinMaxScaler, target_scaler: MinMaxScaler) -> Dataset:
    """
    Scaled copy of a dataset

    Features use the feature scaler; target and clear sky both use the
    target scaler so clear sky stays in target units.
    """
    data = fill_missing_zeros(dataset)
    if tuple(feature_scaler.channels) != tuple(data.feature_names):
        raise DatasetError(
            f"Scaler channels {list(feature_scaler.channels)} do not match "
            f"dataset features {list(data.feature_names)}"
        )
    return data.replace(
        features=feature_scaler.apply(data.features),
        target=target_scaler.apply(data.target),
        clear_sky=target_scaler.apply(data.clear_sky),
    )


def select_features(dataset: Dataset, names: Sequence[str]) -> Dataset:
    """Dataset restricted to the named feature columns, in the given order"""
    if not names:
        raise InvalidArgumentError("select_features needs at least one feature name")
    idx = [dataset.feature_index(n) for n in names]
    return dataset.replace(features=dataset.features[:, idx], feature_names=tuple(names))


def single_station_features(dataset: Dataset, target_feature: str = "ghi") -> Tuple[str, ...]:
    """
    Column set of the single-station baseline: the station target channel
    plus the embedded time channels present in the dataset
    """
    names = [target_feature] if target_feature in dataset.feature_names else []
    names.extend(n for n in TIME_FEATURES if n in dataset.feature_names)
    if not names:
        raise DatasetError(
            f"Dataset has neither '{target_feature}' nor time embeddings; "
            f"available: {list(dataset.feature_names)}"
        )
    return tuple(names)
