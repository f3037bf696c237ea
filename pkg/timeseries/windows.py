"""
Sliding-window sample construction and year-based splits
"""

from dataclasses import dataclass
from typing import Iterator, List, Tuple

import numpy as np
import pandas as pd

from config.logging import get_logger
from core.exceptions import InvalidArgumentError
from .dataset import Dataset

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class WindowedSample:
    """
    One forecast origin

    inputs covers t0-W+1 .. t0; targets and future_clear_sky cover
    t0+1 .. t0+P. history_* are the target and clear sky over the input
    hours.
    """
    inputs: np.ndarray
    targets: np.ndarray
    future_clear_sky: np.ndarray
    origin: int
    history_target: np.ndarray
    history_clear_sky: np.ndarray


@dataclass(frozen=True, eq=False)
class WindowBatch:
    """Stacked windows: inputs B x W x D, targets B x P, future_clear_sky B x P"""
    inputs: np.ndarray
    targets: np.ndarray
    future_clear_sky: np.ndarray
    origins: np.ndarray
    history_target: np.ndarray
    history_clear_sky: np.ndarray

    def __len__(self) -> int:
        return int(self.inputs.shape[0])

    def __getitem__(self, index: int) -> WindowedSample:
        return WindowedSample(
            inputs=self.inputs[index],
            targets=self.targets[index],
            future_clear_sky=self.future_clear_sky[index],
            origin=int(self.origins[index]),
            history_target=self.history_target[index],
            history_clear_sky=self.history_clear_sky[index],
        )

    def __iter__(self) -> Iterator[WindowedSample]:
        for i in range(len(self)):
            yield self[i]

    @property
    def window(self) -> int:
        return int(self.inputs.shape[1])

    @property
    def horizon(self) -> int:
        return int(self.targets.shape[1])

    def take(self, index) -> "WindowBatch":
        """Batch restricted to the selected rows"""
        return WindowBatch(
            inputs=self.inputs[index],
            targets=self.targets[index],
            future_clear_sky=self.future_clear_sky[index],
            origins=self.origins[index],
            history_target=self.history_target[index],
            history_clear_sky=self.history_clear_sky[index],
        )

    def target_hours(self) -> np.ndarray:
        """Timestamps of every target entry, B x P"""
        return self.origins[:, None] + np.arange(1, self.horizon + 1, dtype=np.int64)[None, :]


def window_count(length: int, window: int, horizon: int, stride: int = 1) -> int:
    """Number of windows in a contiguous run of the given length"""
    if length < window + horizon:
        return 0
    return (length - window - horizon) // stride + 1


def make_windows(dataset: Dataset, window: int, horizon: int, stride: int = 1) -> WindowBatch:
    """
    Build every window that fits inside a contiguous 1 h run of the dataset

    Args:
        dataset: Source dataset (scaled or raw)
        window: Input length W in hours
        horizon: Forecast length P in hours
        stride: Step between consecutive origins

    Returns:
        WindowBatch; per contiguous run the count is (len - W - P) // stride + 1

    Raises:
        InvalidArgumentError: on non-positive sizes or if no run holds W + P hours
    """
    if window <= 0 or horizon <= 0 or stride <= 0:
        raise InvalidArgumentError(
            f"window, horizon and stride must be positive, got {window}, {horizon}, {stride}"
        )
    required = window + horizon
    segments = dataset.segments()
    longest = max((stop - start for start, stop in segments), default=0)
    if longest < required:
        raise InvalidArgumentError(
            f"Dataset too short for windowing: need at least {required} contiguous hours "
            f"(W={window} + P={horizon}), longest run has {longest}"
        )

    starts: List[np.ndarray] = []
    for seg_start, seg_stop in segments:
        count = window_count(seg_stop - seg_start, window, horizon, stride)
        if count:
            starts.append(seg_start + stride * np.arange(count))
    first = np.concatenate(starts)

    in_idx = first[:, None] + np.arange(window)[None, :]
    out_idx = first[:, None] + window + np.arange(horizon)[None, :]

    batch = WindowBatch(
        inputs=dataset.features[in_idx],
        targets=dataset.target[out_idx],
        future_clear_sky=dataset.clear_sky[out_idx],
        origins=dataset.timestamps[first + window - 1],
        history_target=dataset.target[in_idx],
        history_clear_sky=dataset.clear_sky[in_idx],
    )
    logger.debug(f"Built {len(batch)} windows (W={window}, P={horizon}, stride={stride})")
    return batch


def split_by_year(dataset: Dataset, test_year: int, val_year: int) -> Tuple[Dataset, Dataset, Dataset]:
    """
    Partition a dataset into train / validation / test by calendar year

    Args:
        dataset: Dataset spanning at least three calendar years
        test_year: Calendar year held out for testing
        val_year: Calendar year held out for validation

    Returns:
        (train, val, test); train keeps every other year

    Raises:
        InvalidArgumentError: same year twice, fewer than 3 years, or an absent year
    """
    test_year, val_year = int(test_year), int(val_year)
    if test_year == val_year:
        raise InvalidArgumentError(f"Test and validation year overlap: {test_year}")
    years = dataset.years()
    present = sorted(int(y) for y in np.unique(years))
    if len(present) < 3:
        raise InvalidArgumentError(f"Year split needs at least 3 calendar years, dataset has {present}")
    for label, year in (("test", test_year), ("validation", val_year)):
        if year not in present:
            raise InvalidArgumentError(f"{label} year {year} not in dataset years {present}")

    test_mask = years == test_year
    val_mask = years == val_year
    train_mask = ~(test_mask | val_mask)
    logger.info(
        f"Split by year: test={test_year}, val={val_year}, "
        f"train={[y for y in present if y not in (test_year, val_year)]}"
    )
    return dataset.subset(train_mask), dataset.subset(val_mask), dataset.subset(test_mask)


def year_correlations(dataset: Dataset) -> pd.Series:
    """
    Mean correlation of each year's daily-mean target profile with the other years

    Days are matched by calendar month and day.
    """
    stamps = pd.to_datetime(dataset.timestamps, unit="h")
    frame = pd.DataFrame({
        "year": stamps.year,
        "day": stamps.strftime("%m-%d"),
        "target": np.asarray(dataset.target, dtype=float),
    })
    profile = frame.pivot_table(index="day", columns="year", values="target", aggfunc="mean")
    corr = profile.corr()
    n = corr.shape[0]
    if n < 2:
        return pd.Series(dtype=float)
    mean_other = (corr.sum(axis=1) - 1.0) / (n - 1)
    return mean_other.sort_values()


def suggest_split_years(dataset: Dataset) -> Tuple[int, int]:
    """
    Pick (test_year, val_year) as the two years least correlated with the rest

    Raises:
        InvalidArgumentError: with fewer than 3 calendar years
    """
    ranking = year_correlations(dataset)
    if len(ranking) < 3:
        raise InvalidArgumentError(
            f"Year suggestion needs at least 3 calendar years, dataset has {list(ranking.index)}"
        )
    test_year, val_year = int(ranking.index[0]), int(ranking.index[1])
    logger.info(f"Suggested split years: test={test_year}, val={val_year} (mean correlations {ranking.round(4).to_dict()})")
    return test_year, val_year
