"""
Hourly irradiance dataset containers
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import DatasetError


@dataclass(frozen=True)
class IrradianceRecord:
    """One hour of observations"""
    timestamp: int
    features: Tuple[float, ...]
    target: float
    clear_sky: float


@dataclass(frozen=True)
class SyntheticConfig:
    """Parameters of the synthetic high-latitude generator"""
    latitude: float = 60.0
    year_count: int = 5
    cloud_autocorrelation: float = 0.7
    cloud_floor: float = 0.1
    seed: int = 0
    start_year: int = 2016
    cloud_noise: float = 0.15


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Column-oriented hourly dataset

    Arrays are read-only after construction. Missing values are NaN until
    fill_missing_zeros is applied.
    """
    timestamps: np.ndarray
    features: np.ndarray
    target: np.ndarray
    clear_sky: np.ndarray
    feature_names: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype=np.int64).reshape(-1)
        feats = np.asarray(self.features, dtype=float)
        if feats.ndim == 1:
            feats = feats.reshape(-1, 1)
        target = np.asarray(self.target, dtype=float).reshape(-1)
        cs = np.asarray(self.clear_sky, dtype=float).reshape(-1)
        names = tuple(self.feature_names) or tuple(f"f{i}" for i in range(feats.shape[1]))

        n = ts.shape[0]
        if feats.shape[0] != n or target.shape[0] != n or cs.shape[0] != n:
            raise DatasetError(
                f"Column lengths differ: timestamps={n}, features={feats.shape[0]}, "
                f"target={target.shape[0]}, clear_sky={cs.shape[0]}"
            )
        if feats.shape[1] != len(names):
            raise DatasetError(f"{feats.shape[1]} feature columns but {len(names)} feature names")
        if n > 1 and np.any(np.diff(ts) <= 0):
            raise DatasetError("Timestamps must be strictly increasing")

        for arr in (ts, feats, target, cs):
            arr.setflags(write=False)
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "clear_sky", cs)
        object.__setattr__(self, "feature_names", names)

    def __len__(self) -> int:
        return int(self.timestamps.shape[0])

    @property
    def num_features(self) -> int:
        return int(self.features.shape[1])

    def has_missing(self) -> bool:
        return bool(np.isnan(self.features).any() or np.isnan(self.target).any()
                    or np.isnan(self.clear_sky).any())

    def records(self) -> Iterator[IrradianceRecord]:
        for i in range(len(self)):
            yield IrradianceRecord(
                timestamp=int(self.timestamps[i]),
                features=tuple(float(v) for v in self.features[i]),
                target=float(self.target[i]),
                clear_sky=float(self.clear_sky[i]),
            )

    @classmethod
    def from_records(cls, records: Iterable[IrradianceRecord], feature_names: Sequence[str]) -> "Dataset":
        rows = list(records)
        width = len(feature_names)
        for r in rows:
            if len(r.features) != width:
                raise DatasetError(
                    f"Record at {r.timestamp} has {len(r.features)} features, expected {width}"
                )
        return cls(
            timestamps=np.array([r.timestamp for r in rows], dtype=np.int64),
            features=np.array([r.features for r in rows], dtype=float).reshape(len(rows), width),
            target=np.array([r.target for r in rows], dtype=float),
            clear_sky=np.array([r.clear_sky for r in rows], dtype=float),
            feature_names=tuple(feature_names),
        )

    def subset(self, index) -> "Dataset":
        """Rows selected by a boolean mask or an index array"""
        return Dataset(
            timestamps=self.timestamps[index],
            features=self.features[index],
            target=self.target[index],
            clear_sky=self.clear_sky[index],
            feature_names=self.feature_names,
        )

    def replace(self, **columns) -> "Dataset":
        """Copy with some columns swapped out"""
        data = dict(
            timestamps=self.timestamps,
            features=self.features,
            target=self.target,
            clear_sky=self.clear_sky,
            feature_names=self.feature_names,
        )
        data.update(columns)
        return Dataset(**data)

    def feature_index(self, name: str) -> int:
        try:
            return self.feature_names.index(name)
        except ValueError:
            raise DatasetError(f"Unknown feature '{name}'; available: {list(self.feature_names)}")

    def years(self) -> np.ndarray:
        """Calendar year of every row"""
        return self.timestamps.astype("datetime64[h]").astype("datetime64[Y]").astype(np.int64) + 1970

    def segments(self) -> List[Tuple[int, int]]:
        """Half-open [start, stop) row ranges with a constant 1 h step"""
        n = len(self)
        if n == 0:
            return []
        breaks = np.flatnonzero(np.diff(self.timestamps) != 1) + 1
        starts = np.concatenate([[0], breaks])
        stops = np.concatenate([breaks, [n]])
        return [(int(a), int(b)) for a, b in zip(starts, stops)]

    def tail(self, count: int) -> "Dataset":
        return self.subset(slice(max(0, len(self) - count), len(self)))

    def find_timestamp(self, timestamp: int) -> Optional[int]:
        idx = int(np.searchsorted(self.timestamps, timestamp))
        if idx < len(self) and self.timestamps[idx] == timestamp:
            return idx
        return None
