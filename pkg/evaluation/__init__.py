"""
Point-error and calibration evaluation
"""

from .metrics import mae, rmse, per_horizon_rmse, picp, ace, quantile_loss, point_metrics
from .calibration import (
    PredictionInterval,
    CalibrationReport,
    available_coverages,
    output_quantiles,
    forecast_median,
    intervals_from_output,
    picp_by_coverage,
    reliability,
    coverage_ace,
    calibration_report,
)
from .report import (
    TABLE_COLUMNS,
    ModelReport,
    EvaluationReport,
    daylight_mask,
    evaluate_forecast,
    evaluate_point,
    save_report,
)

__all__ = [
    "mae",
    "rmse",
    "per_horizon_rmse",
    "picp",
    "ace",
    "quantile_loss",
    "point_metrics",
    "PredictionInterval",
    "CalibrationReport",
    "available_coverages",
    "output_quantiles",
    "forecast_median",
    "intervals_from_output",
    "picp_by_coverage",
    "reliability",
    "coverage_ace",
    "calibration_report",
    "TABLE_COLUMNS",
    "ModelReport",
    "EvaluationReport",
    "daylight_mask",
    "evaluate_forecast",
    "evaluate_point",
    "save_report",
]
