"""
CSV ingestion and export

Schema: header `timestamp,target,clear_sky,<feature...>`, ISO-8601 UTC
timestamps at hour resolution, missing values as empty fields.
"""

import io
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from config.logging import get_logger
from core.exceptions import DataIOError, DatasetError
from core.utils import atomic_write_text
from core.validators import validate_input_path, validate_output_path
from .dataset import Dataset

logger = get_logger(__name__)

REQUIRED_COLUMNS = ("timestamp", "target", "clear_sky")
NS_PER_HOUR = 3_600_000_000_000


def format_timestamps(timestamps: np.ndarray) -> np.ndarray:
    """Hour stamps as ISO-8601 strings with a Z suffix"""
    stamps = np.asarray(timestamps, dtype=np.int64).astype("datetime64[h]")
    return np.char.add(np.datetime_as_string(stamps, unit="s"), "Z")


def parse_timestamps(values: pd.Series) -> np.ndarray:
    """
    ISO-8601 strings to integer hours since epoch

    Raises:
        DatasetError: unparseable or not on a whole hour
    """
    try:
        parsed = pd.to_datetime(values, utc=True)
    except (ValueError, TypeError) as e:
        raise DatasetError(f"Unparseable timestamp column: {e}")
    if parsed.isna().any():
        raise DatasetError("Timestamp column contains empty values")
    ns = parsed.astype("int64").to_numpy()
    if np.any(ns % NS_PER_HOUR != 0):
        raise DatasetError("Timestamps must fall on whole hours")
    return ns // NS_PER_HOUR


def load_csv(path: Union[str, Path]) -> Dataset:
    """
    Read a dataset CSV

    Raises:
        DataIOError: file missing or unreadable
        DatasetError: schema violations
    """
    source = validate_input_path(path)
    try:
        frame = pd.read_csv(source, dtype={"timestamp": str}, keep_default_na=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataIOError(source, f"cannot read CSV: {e}")

    columns = list(frame.columns)
    if tuple(columns[:3]) != REQUIRED_COLUMNS:
        raise DatasetError(
            f"{source}: header must start with {','.join(REQUIRED_COLUMNS)}, got {','.join(columns[:3])}"
        )
    feature_names = tuple(columns[3:])
    if not feature_names:
        raise DatasetError(f"{source}: no feature columns after {','.join(REQUIRED_COLUMNS)}")

    try:
        numeric = frame[columns[1:]].apply(pd.to_numeric, errors="raise")
    except (ValueError, TypeError) as e:
        raise DatasetError(f"{source}: non-numeric value: {e}")

    dataset = Dataset(
        timestamps=parse_timestamps(frame["timestamp"]),
        features=numeric[list(feature_names)].to_numpy(dtype=float),
        target=numeric["target"].to_numpy(dtype=float),
        clear_sky=numeric["clear_sky"].to_numpy(dtype=float),
        feature_names=feature_names,
    )
    logger.info(f"Loaded {len(dataset)} rows x {dataset.num_features} features from {source}")
    return dataset


def dataset_to_frame(dataset: Dataset) -> pd.DataFrame:
    frame = pd.DataFrame(dataset.features, columns=list(dataset.feature_names))
    frame.insert(0, "clear_sky", dataset.clear_sky)
    frame.insert(0, "target", dataset.target)
    frame.insert(0, "timestamp", format_timestamps(dataset.timestamps))
    return frame


def save_csv(dataset: Dataset, path: Union[str, Path]) -> Path:
    """
    Write a dataset CSV atomically

    Returns:
        Resolved output path
    """
    target = validate_output_path(path)
    buffer = io.StringIO()
    dataset_to_frame(dataset).to_csv(buffer, index=False, na_rep="", lineterminator="\n")
    atomic_write_text(target, buffer.getvalue())
    logger.info(f"Wrote {len(dataset)} rows to {target}")
    return target
