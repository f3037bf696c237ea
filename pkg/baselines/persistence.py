"""
Smart persistence adapted to a 36 hour horizon

For a target hour t+h the clear-sky index observed 24 hours earlier at the
same time of day is applied to the clear sky at t+h. Hours 25..36 reuse the
ratios of hours 1..12.
"""

from dataclasses import dataclass

import numpy as np

from core.exceptions import InvalidArgumentError
from timeseries.windows import WindowBatch

DAY_HOURS = 24
# Below this clear sky the index is treated as 1
CLEAR_SKY_GUARD = 1.0
RATIO_MIN = 0.0
RATIO_MAX = 1.5


@dataclass(frozen=True, eq=False)
class SmartPersistenceState:
    """Last 24 observations and clear sky, plus clear sky for the target hours (W/m^2)"""
    observations: np.ndarray
    clear_sky_past: np.ndarray
    clear_sky_future: np.ndarray

    def __post_init__(self):
        obs = np.asarray(self.observations, dtype=float)
        past = np.asarray(self.clear_sky_past, dtype=float)
        future = np.asarray(self.clear_sky_future, dtype=float)
        if obs.shape[-1] != DAY_HOURS or past.shape != obs.shape:
            raise InvalidArgumentError(
                f"Smart persistence needs the last {DAY_HOURS} observations and clear-sky values, "
                f"got {obs.shape} and {past.shape}"
            )
        if np.any(past < 0) or np.any(future < 0):
            raise InvalidArgumentError("Clear-sky values must be non-negative")
        object.__setattr__(self, "observations", obs)
        object.__setattr__(self, "clear_sky_past", past)
        object.__setattr__(self, "clear_sky_future", future)


def clear_sky_ratio(observations, clear_sky) -> np.ndarray:
    """x / cs where cs > 1 W/m^2, else 1; clamped to [0, 1.5]"""
    x = np.asarray(observations, dtype=float)
    cs = np.asarray(clear_sky, dtype=float)
    up = cs > CLEAR_SKY_GUARD
    ratio = np.where(up, x / np.where(up, cs, 1.0), 1.0)
    return np.clip(ratio, RATIO_MIN, RATIO_MAX)


def source_hours(horizon: int) -> np.ndarray:
    """Index into the last-24 h arrays used for each horizon step"""
    if horizon <= 0 or horizon > 2 * DAY_HOURS:
        raise InvalidArgumentError(f"Smart persistence supports horizons 1..{2 * DAY_HOURS}, got {horizon}")
    return np.arange(horizon) % DAY_HOURS


def smart_persistence_36h(state: SmartPersistenceState) -> np.ndarray:
    """
    Forecast for every hour of state.clear_sky_future (normally 36)

    Returns:
        Non-negative forecast in W/m^2, same length as the future clear sky
    """
    ratio = clear_sky_ratio(state.observations, state.clear_sky_past)
    horizon = state.clear_sky_future.shape[-1]
    return ratio[..., source_hours(horizon)] * state.clear_sky_future


def smart_persistence_batch(windows: WindowBatch) -> np.ndarray:
    """
    Smart persistence for every window of an unscaled batch

    Args:
        windows: Windows built on the raw dataset (W >= 24)

    Returns:
        B x P forecast in W/m^2
    """
    if windows.window < DAY_HOURS:
        raise InvalidArgumentError(
            f"Smart persistence needs at least {DAY_HOURS} input hours, windows have {windows.window}"
        )
    state = SmartPersistenceState(
        observations=windows.history_target[:, -DAY_HOURS:],
        clear_sky_past=np.maximum(windows.history_clear_sky[:, -DAY_HOURS:], 0.0),
        clear_sky_future=np.maximum(windows.future_clear_sky, 0.0),
    )
    return smart_persistence_36h(state)
