"""
Solar geometry, clear-sky irradiance and cyclic time embedding

Timestamps are integer hours since 1970-01-01T00:00 and are read as local
solar time: the sun culminates at hour 12 of every day.
"""

from typing import Tuple, Union

import numpy as np

from core.exceptions import InvalidArgumentError
from core.validators import validate_latitude

ArrayLike = Union[float, np.ndarray]

# Haurwitz-style clear-sky constants
CLEARSKY_SCALE = 1098.0
CLEARSKY_EXTINCTION = 0.057

HOUR_PERIOD = 24.0
WEEKDAY_PERIOD = 7.0
WEEK_PERIOD = 52.0

TIME_FEATURES = ("hour_sin", "hour_cos", "dow_sin", "dow_cos", "week_sin", "week_cos")


def embed_time(t: ArrayLike, period: float) -> Tuple[ArrayLike, ArrayLike]:
    """
    Decompose a cyclic time value into sine and cosine components

    Args:
        t: Time value(s) in units of the period
        period: Cycle length (24 for hour of day)

    Returns:
        (sin(2*pi*t/period), cos(2*pi*t/period))

    Raises:
        InvalidArgumentError: if period is not positive
    """
    if not period > 0:
        raise InvalidArgumentError(f"Embedding period must be positive, got {period}")
    phase = 2.0 * np.pi * np.asarray(t, dtype=float) / float(period)
    s, c = np.sin(phase), np.cos(phase)
    if np.ndim(s) == 0:
        return float(s), float(c)
    return s, c


def calendar_fields(timestamps: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Split hour stamps into hour of day, day of year (1-based), day of week
    (Monday = 0) and week of year (0-based)
    """
    ts = np.asarray(timestamps, dtype=np.int64)
    stamp = ts.astype("datetime64[h]")
    days = stamp.astype("datetime64[D]")
    day_of_year = (days - days.astype("datetime64[Y]")).astype(np.int64) + 1
    hour = (stamp - days).astype(np.int64)
    # 1970-01-01 was a Thursday
    day_of_week = (days.astype(np.int64) + 3) % 7
    week_of_year = (day_of_year - 1) // 7
    return hour, day_of_year, day_of_week, week_of_year


def time_embeddings(timestamps: ArrayLike) -> np.ndarray:
    """
    Six embedded time channels (hour of day, day of week, week of year)

    Returns:
        N x 6 array ordered as TIME_FEATURES
    """
    hour, _, dow, week = calendar_fields(timestamps)
    columns = []
    for value, period in ((hour, HOUR_PERIOD), (dow, WEEKDAY_PERIOD), (week, WEEK_PERIOD)):
        s, c = embed_time(np.asarray(value, dtype=float), period)
        columns.extend([np.atleast_1d(s), np.atleast_1d(c)])
    return np.column_stack(columns)


def solar_declination(day_of_year: ArrayLike) -> ArrayLike:
    """Solar declination in degrees (Cooper's formula)"""
    return 23.45 * np.sin(2.0 * np.pi * (284.0 + np.asarray(day_of_year, dtype=float)) / 365.0)


def solar_elevation(timestamps: ArrayLike, latitude: float) -> ArrayLike:
    """
    Solar elevation angle in degrees from declination and hour angle

    Args:
        timestamps: Hours since epoch (local solar time)
        latitude: Site latitude in degrees

    Returns:
        Elevation in degrees, negative below the horizon
    """
    lat = np.radians(validate_latitude(latitude))
    hour, doy, _, _ = calendar_fields(timestamps)
    decl = np.radians(solar_declination(doy))
    hour_angle = np.radians(15.0 * (hour.astype(float) - 12.0))
    sin_el = np.sin(lat) * np.sin(decl) + np.cos(lat) * np.cos(decl) * np.cos(hour_angle)
    elevation = np.degrees(np.arcsin(np.clip(sin_el, -1.0, 1.0)))
    if np.ndim(timestamps) == 0:
        return float(elevation)
    return elevation


def clearsky_from_elevation(elevation_deg: ArrayLike) -> ArrayLike:
    """
    Clear-sky global irradiance for a given solar elevation

    irradiance = 1098 * sin(el) * exp(-0.057 / sin(el)) for el > 0, else 0

    Args:
        elevation_deg: Solar elevation in degrees

    Returns:
        Irradiance in W/m^2
    """
    elevation = np.asarray(elevation_deg, dtype=float)
    sin_el = np.sin(np.radians(elevation))
    up = elevation > 0.0
    safe = np.where(up, sin_el, 1.0)
    out = np.where(up, CLEARSKY_SCALE * safe * np.exp(-CLEARSKY_EXTINCTION / safe), 0.0)
    if np.ndim(elevation_deg) == 0:
        return float(out)
    return out


def clearsky_curve(timestamps: ArrayLike, latitude: float) -> ArrayLike:
    """
    Clear-sky irradiance (W/m^2) at the given hours and latitude

    Args:
        timestamps: Hours since epoch (scalar or array)
        latitude: Degrees within [-90, 90]

    Returns:
        Non-negative irradiance, zero while the sun is below the horizon
    """
    return clearsky_from_elevation(solar_elevation(timestamps, latitude))
