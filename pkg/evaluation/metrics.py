"""
Point-error and coverage metrics

Every function accepts an optional boolean mask selecting the entries to
score (used for daylight-only evaluation).
"""

from typing import Dict, Optional, Sequence

import numpy as np

from config.logging import get_logger
from core.exceptions import InvalidArgumentError
from losses import pinball_terms

logger = get_logger(__name__)


def _pair(y, y_hat, name: str):
    y = np.asarray(y, dtype=float)
    y_hat = np.asarray(y_hat, dtype=float)
    if y.shape != y_hat.shape:
        raise InvalidArgumentError(f"{name}: shape mismatch {y.shape} vs {y_hat.shape}")
    return y, y_hat


def _select(values: np.ndarray, mask: Optional[np.ndarray]) -> np.ndarray:
    if mask is None:
        return values.reshape(-1)
    return values[np.asarray(mask, dtype=bool)]


def mae(y, y_hat, mask: Optional[np.ndarray] = None) -> float:
    """Mean absolute error"""
    y, y_hat = _pair(y, y_hat, "mae")
    err = _select(np.abs(y - y_hat), mask)
    return float(np.mean(err)) if err.size else float("nan")


def rmse(y, y_hat, mask: Optional[np.ndarray] = None) -> float:
    """Root mean squared error"""
    y, y_hat = _pair(y, y_hat, "rmse")
    err = _select((y - y_hat) ** 2, mask)
    return float(np.sqrt(np.mean(err))) if err.size else float("nan")


def per_horizon_rmse(y, y_hat, mask: Optional[np.ndarray] = None) -> np.ndarray:
    """
    RMSE for every horizon step over the batch axis

    Args:
        y: B x P targets
        y_hat: B x P point forecasts

    Returns:
        Length-P vector (NaN where the mask leaves a step empty)
    """
    y, y_hat = _pair(y, y_hat, "per_horizon_rmse")
    if y.ndim != 2:
        raise InvalidArgumentError(f"per_horizon_rmse expects B x P arrays, got {y.shape}")
    sq = (y - y_hat) ** 2
    if mask is None:
        return np.sqrt(np.mean(sq, axis=0))
    m = np.asarray(mask, dtype=bool)
    counts = m.sum(axis=0)
    sums = np.where(m, sq, 0.0).sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(counts > 0, np.sqrt(sums / np.maximum(counts, 1)), np.nan)


def picp(y, lower, upper, mask: Optional[np.ndarray] = None) -> float:
    """Fraction of targets inside the closed intervals [lower, upper]"""
    y = np.asarray(y, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape != y.shape or upper.shape != y.shape:
        raise InvalidArgumentError(f"picp: shapes {y.shape}, {lower.shape}, {upper.shape} differ")
    inside = _select((y >= lower) & (y <= upper), mask)
    return float(np.mean(inside)) if inside.size else float("nan")


def ace(picp_values: Sequence[float], coverages: Sequence[float]) -> float:
    """Average coverage error: mean |c - PICP_c|"""
    p = np.asarray(picp_values, dtype=float)
    c = np.asarray(coverages, dtype=float)
    if p.shape != c.shape:
        raise InvalidArgumentError(f"ace: {p.size} PICP values for {c.size} coverages")
    if p.size == 0:
        raise InvalidArgumentError("ace: empty coverage set")
    return float(np.mean(np.abs(c - p)))


def quantile_loss(y, quantile_grid, levels: Sequence[float], mask: Optional[np.ndarray] = None) -> float:
    """
    Pinball loss of a B x P x |Q| quantile grid, averaged over entries and levels
    """
    terms = pinball_terms(y, quantile_grid, levels)
    if mask is None:
        return float(np.mean(terms))
    selected = terms[np.asarray(mask, dtype=bool)]
    return float(np.mean(selected)) if selected.size else float("nan")


def point_metrics(y, y_hat, mask: Optional[np.ndarray] = None) -> Dict[str, float]:
    """MAE and RMSE as a dict"""
    return {
        "mae": mae(y, y_hat, mask),
        "rmse": rmse(y, y_hat, mask),
    }
