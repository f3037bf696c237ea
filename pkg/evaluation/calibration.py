"""
Prediction intervals, reliability curves and calibration reports
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.logging import get_logger
from config.settings import DEFAULT_COVERAGES, RELIABILITY_LEVELS
from core.exceptions import ConfigurationError, InvalidArgumentError
from core.models import ForecastOutput, ParametricForecast, PointForecast, QuantileForecast
from core.validators import validate_probability_grid
from distributions import get_family
from .metrics import ace, per_horizon_rmse, picp

logger = get_logger(__name__)

Transform = Optional[Callable[[np.ndarray], np.ndarray]]

LEVEL_TOLERANCE = 1e-9


def _apply(transform: Transform, values: np.ndarray) -> np.ndarray:
    return values if transform is None else transform(values)


@dataclass(eq=False)
class PredictionInterval:
    """Central interval with nominal coverage, arrays shaped B x P"""
    lower: np.ndarray
    upper: np.ndarray
    coverage: float


def available_coverages(levels: Sequence[float]) -> List[float]:
    """Coverages c whose (1-c)/2 and (1+c)/2 quantiles are both in the set"""
    out = []
    for q in levels:
        if q < 0.5 and any(abs(r - (1.0 - q)) <= LEVEL_TOLERANCE for r in levels):
            out.append(round(1.0 - 2.0 * q, 12))
    return sorted(out)


def _level_index(levels: Sequence[float], p: float) -> Optional[int]:
    for k, q in enumerate(levels):
        if abs(q - p) <= LEVEL_TOLERANCE:
            return k
    return None


def output_quantiles(output: ForecastOutput, levels: Sequence[float], transform: Transform = None) -> np.ndarray:
    """
    Predicted quantiles at the requested levels, B x P x len(levels)

    Raises:
        ConfigurationError: point forecasts, or levels missing from a quantile grid
    """
    levels = [float(p) for p in levels]
    if isinstance(output, QuantileForecast):
        idx = []
        for p in levels:
            k = _level_index(output.levels, p)
            if k is None:
                raise ConfigurationError(
                    f"Quantile level {p} not produced by the model; available: {list(output.levels)}"
                )
            idx.append(k)
        grid = output.values[..., idx]
    elif isinstance(output, ParametricForecast):
        family = get_family(output.family)
        grid = np.stack([family.quantile(p, output.params) for p in levels], axis=-1)
    else:
        raise ConfigurationError("A point forecast has no quantiles")
    return _apply(transform, grid)


def forecast_median(output: ForecastOutput, transform: Transform = None) -> np.ndarray:
    """Point forecast: the values themselves or the predictive median"""
    if isinstance(output, PointForecast):
        return _apply(transform, output.values)
    return output_quantiles(output, [0.5], transform)[..., 0]


def intervals_from_output(output: ForecastOutput, coverages: Sequence[float],
                          transform: Transform = None) -> Dict[float, PredictionInterval]:
    """
    Central prediction intervals [q((1-c)/2), q((1+c)/2)] for every coverage

    Raises:
        ConfigurationError: point forecast, or a quantile grid lacking the pair for c
    """
    coverages = validate_probability_grid(coverages, name="coverages")
    if isinstance(output, QuantileForecast):
        usable = available_coverages(output.levels)
        missing = [c for c in coverages if not any(abs(c - u) <= 1e-9 for u in usable)]
        if missing:
            raise ConfigurationError(
                f"Quantile set {list(output.levels)} cannot form intervals for coverages {missing}; "
                f"available coverages: {usable}"
            )
    intervals: Dict[float, PredictionInterval] = {}
    for c in coverages:
        grid = output_quantiles(output, [(1.0 - c) / 2.0, (1.0 + c) / 2.0], transform)
        intervals[c] = PredictionInterval(lower=grid[..., 0], upper=grid[..., 1], coverage=c)
    return intervals


def picp_by_coverage(y, intervals: Dict[float, PredictionInterval],
                     mask: Optional[np.ndarray] = None) -> Dict[float, float]:
    return {c: picp(y, iv.lower, iv.upper, mask) for c, iv in intervals.items()}


def reliability(y, output: ForecastOutput, p_grid: Sequence[float] = RELIABILITY_LEVELS,
                transform: Transform = None, mask: Optional[np.ndarray] = None) -> List[Tuple[float, float]]:
    """
    Observed frequency of y <= predicted p-quantile for each p

    Quantile grids are restricted to the levels they produce.
    """
    grid = list(validate_probability_grid(p_grid, name="p_grid"))
    if isinstance(output, QuantileForecast):
        inside = [p for p in grid if _level_index(output.levels, p) is not None]
        grid = inside or list(output.levels)
    y = np.asarray(y, dtype=float)
    quantiles = output_quantiles(output, grid, transform)
    pairs = []
    for k, p in enumerate(grid):
        below = y <= quantiles[..., k]
        selected = below.reshape(-1) if mask is None else below[np.asarray(mask, dtype=bool)]
        pairs.append((float(p), float(np.mean(selected)) if selected.size else float("nan")))
    return pairs


def coverage_ace(y, output: ForecastOutput, coverages: Sequence[float] = DEFAULT_COVERAGES,
                 transform: Transform = None, mask: Optional[np.ndarray] = None) -> Optional[float]:
    """
    ACE over the coverages the output can form; None for point forecasts or
    quantile grids with no usable pair
    """
    if isinstance(output, PointForecast):
        return None
    usable = list(coverages)
    if isinstance(output, QuantileForecast):
        formable = available_coverages(output.levels)
        usable = [c for c in coverages if any(abs(c - u) <= 1e-9 for u in formable)]
        if not usable:
            return None
    intervals = intervals_from_output(output, usable, transform)
    values = picp_by_coverage(y, intervals, mask)
    return ace([values[c] for c in usable], usable)


@dataclass
class CalibrationReport:
    """PICP per coverage, ACE, reliability curve and per-horizon RMSE"""
    coverages: List[float] = field(default_factory=list)
    picp: List[float] = field(default_factory=list)
    ace: Optional[float] = None
    reliability: List[Tuple[float, float]] = field(default_factory=list)
    per_horizon_rmse: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "coverages": [float(c) for c in self.coverages],
            "picp": [float(p) for p in self.picp],
            "ace": None if self.ace is None else float(self.ace),
            "reliability": [[float(p), float(f)] for p, f in self.reliability],
            "per_horizon_rmse": [float(v) for v in self.per_horizon_rmse],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "CalibrationReport":
        return cls(
            coverages=list(data.get("coverages", [])),
            picp=list(data.get("picp", [])),
            ace=data.get("ace"),
            reliability=[tuple(pair) for pair in data.get("reliability", [])],
            per_horizon_rmse=list(data.get("per_horizon_rmse", [])),
        )


def calibration_report(y, output: ForecastOutput, coverages: Sequence[float] = DEFAULT_COVERAGES,
                       p_grid: Sequence[float] = RELIABILITY_LEVELS, transform: Transform = None,
                       mask: Optional[np.ndarray] = None) -> CalibrationReport:
    """
    Calibration summary of one forecast against targets in the same units

    Point forecasts only carry per-horizon RMSE. Quantile grids use the
    coverages they can form; missing ones are skipped with a warning.
    """
    y = np.asarray(y, dtype=float)
    point = forecast_median(output, transform)
    if point.shape != y.shape:
        raise InvalidArgumentError(f"Forecast shape {point.shape} != target shape {y.shape}")
    report = CalibrationReport(per_horizon_rmse=list(per_horizon_rmse(y, point, mask)))
    if isinstance(output, PointForecast):
        return report

    usable = list(coverages)
    if isinstance(output, QuantileForecast):
        formable = available_coverages(output.levels)
        usable = [c for c in coverages if any(abs(c - u) <= 1e-9 for u in formable)]
        skipped = [c for c in coverages if c not in usable]
        if skipped:
            logger.warning(f"Coverages {skipped} skipped: quantile set {list(output.levels)} has no matching pair")
    if usable:
        intervals = intervals_from_output(output, usable, transform)
        values = picp_by_coverage(y, intervals, mask)
        report.coverages = usable
        report.picp = [values[c] for c in usable]
        report.ace = ace(report.picp, usable)
    report.reliability = reliability(y, output, p_grid, transform, mask)
    return report
