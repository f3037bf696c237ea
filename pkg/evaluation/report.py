"""
Model comparison reports: JSON document and a results table CSV
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config.logging import get_logger
from config.settings import DEFAULT_COVERAGES, DEFAULT_QUANTILES, RELIABILITY_LEVELS
from core.models import ForecastOutput, PointForecast, QuantileForecast
from core.utils import atomic_write_text, safe_json_dumps
from core.validators import validate_output_path
from .calibration import CalibrationReport, Transform, calibration_report, forecast_median, output_quantiles
from .metrics import mae, per_horizon_rmse, quantile_loss, rmse

logger = get_logger(__name__)

TABLE_COLUMNS = ("model", "MAE", "RMSE", "quantile_loss", "ACE")


def _optional(value: Optional[float]) -> Optional[float]:
    return None if value is None else float(value)


@dataclass
class ModelReport:
    """One row of the comparison: point errors plus, for probabilistic heads, calibration"""
    model: str
    mae: float
    rmse: float
    quantile_loss: Optional[float] = None
    ace: Optional[float] = None
    calibration: CalibrationReport = field(default_factory=CalibrationReport)

    def table_row(self) -> Dict[str, Any]:
        return {
            "model": self.model,
            "MAE": self.mae,
            "RMSE": self.rmse,
            "quantile_loss": self.quantile_loss,
            "ACE": self.ace,
        }

    def to_dict(self) -> Dict:
        return {
            "model": self.model,
            "mae": float(self.mae),
            "rmse": float(self.rmse),
            "quantile_loss": _optional(self.quantile_loss),
            "ace": _optional(self.ace),
            "calibration": self.calibration.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "ModelReport":
        return cls(
            model=data["model"],
            mae=data["mae"],
            rmse=data["rmse"],
            quantile_loss=data.get("quantile_loss"),
            ace=data.get("ace"),
            calibration=CalibrationReport.from_dict(data.get("calibration", {})),
        )


@dataclass
class EvaluationReport:
    """All rows of one evaluation run plus run metadata"""
    rows: List[ModelReport] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def add(self, row: ModelReport) -> None:
        self.rows.append(row)

    def get(self, model: str) -> Optional[ModelReport]:
        for row in self.rows:
            if row.model == model:
                return row
        return None

    def to_dict(self) -> Dict:
        return {"metadata": dict(self.metadata), "models": [row.to_dict() for row in self.rows]}

    @classmethod
    def from_dict(cls, data: Dict) -> "EvaluationReport":
        return cls(
            rows=[ModelReport.from_dict(r) for r in data.get("models", [])],
            metadata=dict(data.get("metadata", {})),
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.table_row() for row in self.rows], columns=list(TABLE_COLUMNS))

    def to_json(self) -> str:
        return safe_json_dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        # Missing probabilistic scores stay empty, like the dashes of a results table
        return self.to_frame().to_csv(index=False, na_rep="", float_format="%.6f", lineterminator="\n")


def daylight_mask(future_clear_sky) -> np.ndarray:
    """Entries whose clear sky (original units) is strictly positive"""
    return np.asarray(future_clear_sky, dtype=float) > 0.0


def evaluate_forecast(model: str, y, output: ForecastOutput, transform: Transform = None,
                      quantiles: Sequence[float] = DEFAULT_QUANTILES,
                      coverages: Sequence[float] = DEFAULT_COVERAGES,
                      p_grid: Sequence[float] = RELIABILITY_LEVELS,
                      mask: Optional[np.ndarray] = None) -> ModelReport:
    """
    Score a network forecast against targets in original units

    Args:
        model: Row label
        y: B x P targets (W/m^2)
        output: Network output in scaled units
        transform: Map from scaled to original units (target scaler invert)
        quantiles: Level set for the quantile loss of parametric heads
        coverages: Nominal interval coverages
        p_grid: Reliability levels
        mask: Optional B x P selection (daylight-only evaluation)

    Returns:
        ModelReport; deterministic heads carry MAE/RMSE and per-horizon RMSE only
    """
    y = np.asarray(y, dtype=float)
    point = forecast_median(output, transform)
    calibration = calibration_report(y, output, coverages, p_grid, transform, mask)
    qloss = None
    if not isinstance(output, PointForecast):
        levels = output.levels if isinstance(output, QuantileForecast) else tuple(quantiles)
        qloss = quantile_loss(y, output_quantiles(output, levels, transform), levels, mask)
    report = ModelReport(
        model=model,
        mae=mae(y, point, mask),
        rmse=rmse(y, point, mask),
        quantile_loss=qloss,
        ace=calibration.ace,
        calibration=calibration,
    )
    logger.info(f"{model}: MAE={report.mae:.3f}, RMSE={report.rmse:.3f}"
                + ("" if report.ace is None else f", ACE={report.ace:.4f}"))
    return report


def evaluate_point(model: str, y, y_hat, mask: Optional[np.ndarray] = None) -> ModelReport:
    """Score a point-only predictor (smart persistence) in original units"""
    y = np.asarray(y, dtype=float)
    y_hat = np.asarray(y_hat, dtype=float)
    report = ModelReport(
        model=model,
        mae=mae(y, y_hat, mask),
        rmse=rmse(y, y_hat, mask),
        calibration=CalibrationReport(per_horizon_rmse=list(per_horizon_rmse(y, y_hat, mask))),
    )
    logger.info(f"{model}: MAE={report.mae:.3f}, RMSE={report.rmse:.3f}")
    return report


def save_report(report: EvaluationReport, out_dir: Union[str, Path],
                stem: str = "report") -> Tuple[Path, Path]:
    """
    Write `<stem>.json` and `<stem>.csv` atomically

    Returns:
        (json_path, csv_path)
    """
    directory = Path(out_dir)
    json_path = atomic_write_text(validate_output_path(directory / f"{stem}.json"), report.to_json())
    csv_path = atomic_write_text(validate_output_path(directory / f"{stem}.csv"), report.to_csv())
    logger.info(f"Wrote report with {len(report.rows)} rows to {json_path} and {csv_path}")
    return json_path, csv_path
