"""
CLI command implementations

Each command takes a RunConfig and returns a dict describing what it wrote.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from baselines import mlp_baseline_train, smart_persistence_batch
from config.logging import get_logger
from config.settings import get_config_summary
from core.exceptions import ConfigurationError, DivergenceError, InvalidArgumentError
from core.models import Architecture, ForecastOutput, HeadKind, ModelSpec, ParametricForecast, QuantileForecast
from core.utils import atomic_write_text
from core.validators import validate_latitude, validate_output_path
from engine import Forecaster, fit_forecaster, load_checkpoint, save_checkpoint
from evaluation import (
    EvaluationReport,
    available_coverages,
    daylight_mask,
    evaluate_forecast,
    evaluate_point,
    forecast_median,
    intervals_from_output,
    output_quantiles,
    save_report,
)
from timeseries import (
    Dataset,
    clearsky_curve,
    default_synthetic_config,
    fill_missing_zeros,
    load_csv,
    make_windows,
    save_csv,
    scale_dataset,
    select_features,
    split_by_year,
    suggest_split_years,
    synthesize_dataset,
)
from timeseries.io import parse_timestamps
from timeseries.windows import WindowBatch
from visualization import (
    SUMMER_MONTHS,
    WINTER_MONTHS,
    CalibrationVisualizer,
    ErrorProfileVisualizer,
    ForecastVisualizer,
    export_figures,
    seasonal_stretch,
)
from .run_config import SMART_PERSISTENCE, RunConfig

logger = get_logger(__name__)

BAND_COVERAGES = (0.5, 0.9)
FORECAST_COLUMNS = ("horizon_hour", "point", "median", "lower50", "upper50", "lower90", "upper90")


def model_label(spec: ModelSpec) -> str:
    """Row label of a trained model in reports"""
    if spec.arch is Architecture.MLP:
        return "MLP"
    if spec.head is HeadKind.DETERMINISTIC:
        return "LSTM"
    return f"LSTM-{spec.head.value.upper()}"


def _load_dataset(path: str) -> Dataset:
    return fill_missing_zeros(load_csv(path))


def _model_view(dataset: Dataset, forecaster: Forecaster) -> Dataset:
    """Dataset restricted to the columns the forecaster was trained on"""
    if tuple(dataset.feature_names) == tuple(forecaster.feature_names):
        return dataset
    return select_features(dataset, forecaster.feature_names)


def _split_years(config: RunConfig, dataset: Dataset, metadata: Optional[Dict] = None) -> Tuple[int, int]:
    """
    Test and validation years: explicit settings, then checkpoint metadata,
    then the year-correlation suggestion (--auto-years), then the last two years
    """
    metadata = metadata or {}
    test_year = config.test_year if config.test_year is not None else metadata.get("test_year")
    val_year = config.val_year if config.val_year is not None else metadata.get("val_year")
    if test_year is not None and val_year is not None:
        return int(test_year), int(val_year)
    if config.auto_years:
        suggested_test, suggested_val = suggest_split_years(dataset)
        return (int(test_year) if test_year is not None else suggested_test,
                int(val_year) if val_year is not None else suggested_val)
    years = np.unique(dataset.years())
    if years.size < 3:
        raise InvalidArgumentError(f"Need at least 3 calendar years for a split, dataset has {years.tolist()}")
    return (int(test_year) if test_year is not None else int(years[-1]),
            int(val_year) if val_year is not None else int(years[-2]))


# ========================================================
# synth
# ========================================================

def cmd_synth(config: RunConfig) -> Dict[str, Any]:
    """Generate a synthetic dataset CSV"""
    synth_config = default_synthetic_config(
        seed=config.seed,
        latitude=validate_latitude(config.lat),
        year_count=config.years,
        start_year=config.start_year,
        cloud_autocorrelation=config.cloud_autocorrelation,
        cloud_floor=config.cloud_floor,
    )
    dataset = synthesize_dataset(synth_config)
    path = save_csv(dataset, validate_output_path(config.out_dir / config.dataset_name))
    return {"dataset": str(path), "rows": len(dataset)}


# ========================================================
# train
# ========================================================

def cmd_train(config: RunConfig) -> Dict[str, Any]:
    """
    Train a network and write its checkpoint and training log

    Raises:
        ConfigurationError: invalid model settings, before any training
        DivergenceError: after saving the last good checkpoint
    """
    logger.debug(f"Settings: {get_config_summary()}")
    dataset = _load_dataset(config.require("data"))
    spec = config.model_spec(dataset.num_features)
    test_year, val_year = _split_years(config, dataset)
    train_ds, val_ds, _ = split_by_year(dataset, test_year, val_year)
    metadata = {"test_year": test_year, "val_year": val_year, "stride": config.stride}

    if spec.arch is Architecture.MLP:
        forecaster, result = mlp_baseline_train(
            train_ds, val_ds, spec=spec, stride=config.stride,
            target_feature=config.target_feature, metadata=metadata,
        )
    else:
        forecaster, result = fit_forecaster(spec, train_ds, val_ds, stride=config.stride, metadata=metadata)
    forecaster.metadata["label"] = model_label(forecaster.spec)

    out_dir = config.out_dir
    checkpoint = save_checkpoint(forecaster, validate_output_path(out_dir / config.checkpoint_name))
    log_path = atomic_write_text(
        validate_output_path(out_dir / f"{Path(config.checkpoint_name).stem}_training_log.csv"),
        result.log.to_csv(),
    )
    summary = {
        "checkpoint": str(checkpoint),
        "training_log": str(log_path),
        "best_epoch": result.best_epoch,
        "stop_reason": result.log.stop_reason,
    }
    if result.diverged:
        raise DivergenceError(
            f"Training diverged; checkpoint of epoch {result.best_epoch} saved to {checkpoint}", result=summary
        )
    return summary


# ========================================================
# eval
# ========================================================

def _windows_for(forecaster: Forecaster, test: Dataset, stride: int) -> Tuple[WindowBatch, WindowBatch]:
    """Raw and scaled windows over the same origins"""
    view = _model_view(test, forecaster)
    spec = forecaster.spec
    raw = make_windows(view, spec.window, spec.horizon, stride)
    scaled = make_windows(scale_dataset(view, forecaster.feature_scaler, forecaster.target_scaler),
                          spec.window, spec.horizon, stride)
    return raw, scaled


def _band_coverages(output: ForecastOutput) -> List[float]:
    if isinstance(output, QuantileForecast):
        formable = available_coverages(output.levels)
        return [c for c in BAND_COVERAGES if any(abs(c - f) <= 1e-9 for f in formable)]
    if isinstance(output, ParametricForecast):
        return list(BAND_COVERAGES)
    return []


def _stretch_figures(label: str, raw: WindowBatch, output: ForecastOutput, transform,
                     persistence: Optional[np.ndarray]) -> Dict[str, Any]:
    figures = {}
    viz = ForecastVisualizer()
    point = forecast_median(output, transform)
    coverages = _band_coverages(output)
    intervals = intervals_from_output(output, coverages, transform) if coverages else {}
    for season, months in (("summer", SUMMER_MONTHS), ("winter", WINTER_MONTHS)):
        idx = seasonal_stretch(raw.origins, raw.horizon, months)
        if idx is None:
            logger.warning(f"No {season} stretch of consecutive test windows; skipping its figures")
            continue
        hours = raw.target_hours()[idx].reshape(-1)
        observed = raw.targets[idx].reshape(-1)
        if intervals:
            bands = {c: (iv.lower[idx].reshape(-1), iv.upper[idx].reshape(-1)) for c, iv in intervals.items()}
            figures[f"bands_{season}"] = viz.create_band_plot(
                hours, observed, point[idx].reshape(-1), bands, title=f"{label} forecast bands ({season})"
            )
        figures[f"point_{season}"] = viz.create_point_trace_plot(
            hours, observed, point[idx].reshape(-1),
            None if persistence is None else persistence[idx].reshape(-1),
            title=f"{label} point forecast ({season})",
        )
    return figures


def cmd_eval(config: RunConfig) -> Dict[str, Any]:
    """
    Evaluate a checkpoint on the test year; write report JSON/CSV and figures
    """
    forecaster = load_checkpoint(config.require("checkpoint"))
    dataset = _load_dataset(config.require("data"))
    test_year, val_year = _split_years(config, dataset, forecaster.metadata)
    _, _, test = split_by_year(dataset, test_year, val_year)

    raw, scaled = _windows_for(forecaster, test, config.stride)
    output = forecaster.predict_windows(scaled)
    transform = forecaster.to_original
    mask = daylight_mask(raw.future_clear_sky) if config.daylight_only else None
    label = forecaster.metadata.get("label") or model_label(forecaster.spec)

    report = EvaluationReport(metadata={
        "test_year": test_year,
        "val_year": val_year,
        "windows": len(raw),
        "daylight_only": bool(config.daylight_only),
        "coverages": list(config.coverages),
    })
    report.add(evaluate_forecast(label, raw.targets, output, transform,
                                 coverages=config.coverages, mask=mask))
    if not forecaster.spec.head.is_probabilistic:
        logger.warning(f"{label} is deterministic: quantile loss, PICP and ACE are omitted")

    persistence = None
    for baseline in config.baseline:
        if baseline != SMART_PERSISTENCE:
            raise ConfigurationError(f"Unknown baseline '{baseline}'; available: {SMART_PERSISTENCE}")
        persistence = smart_persistence_batch(raw)
        report.add(evaluate_point("smart persistence", raw.targets, persistence, mask))

    for path in config.baseline_checkpoint:
        other = load_checkpoint(path)
        other_raw, other_scaled = _windows_for(other, test, config.stride)
        other_mask = daylight_mask(other_raw.future_clear_sky) if config.daylight_only else None
        report.add(evaluate_forecast(
            other.metadata.get("label") or model_label(other.spec),
            other_raw.targets, other.predict_windows(other_scaled), other.to_original,
            coverages=config.coverages, mask=other_mask,
        ))

    json_path, csv_path = save_report(report, config.out_dir)
    summary: Dict[str, Any] = {"report_json": str(json_path), "report_csv": str(csv_path), "figures": {}}

    if not config.no_plots:
        figures = {
            "horizon_rmse": ErrorProfileVisualizer().create_horizon_rmse_plot(
                {row.model: row.calibration.per_horizon_rmse for row in report.rows}
            ),
        }
        calibrated = {row.model: row.calibration for row in report.rows if row.calibration.coverages}
        if calibrated:
            figures["picp"] = CalibrationVisualizer().create_picp_plot(calibrated)
            figures["reliability"] = CalibrationVisualizer().create_reliability_plot(calibrated)
        figures.update(_stretch_figures(label, raw, output, transform, persistence))
        written = export_figures(figures, config.out_dir)
        summary["figures"] = {k: str(v) for k, v in written.items()}
    return summary


# ========================================================
# forecast
# ========================================================

def _future_clear_sky(dataset: Dataset, end: int, horizon: int, latitude: float) -> np.ndarray:
    """Clear sky for the next hours: from the dataset when it covers them, else computed"""
    hours = dataset.timestamps[end] + np.arange(1, horizon + 1, dtype=np.int64)
    stop = end + 1 + horizon
    if stop <= len(dataset) and np.array_equal(dataset.timestamps[end + 1:stop], hours):
        return np.asarray(dataset.clear_sky[end + 1:stop], dtype=float)
    return np.asarray(clearsky_curve(hours, validate_latitude(latitude)), dtype=float)


def forecast_table(output: ForecastOutput, transform) -> pd.DataFrame:
    """
    One row per horizon hour for a single forecast origin

    Band columns are empty when the head cannot form them. Quantile heads
    add one column per level (W/m^2); parametric heads add their
    distribution parameters in scaled target units.
    """
    point = forecast_median(output, transform)[0]
    horizon = point.shape[0]
    table = pd.DataFrame({
        "horizon_hour": np.arange(1, horizon + 1),
        "point": point,
        "median": point,
    })
    for column in FORECAST_COLUMNS[3:]:
        table[column] = np.nan

    if isinstance(output, QuantileForecast):
        levels = list(output.levels)
        # rearranged so the bands nest
        grid = np.sort(output_quantiles(output, levels, transform)[0], axis=-1)
        median_idx = output.level_index(0.5)
        if median_idx is not None:
            table["median"] = grid[:, median_idx]
            table["point"] = grid[:, median_idx]
        for c in _band_coverages(output):
            lo = output.level_index((1.0 - c) / 2.0)
            hi = output.level_index((1.0 + c) / 2.0)
            tag = int(round(c * 100))
            table[f"lower{tag}"] = grid[:, lo]
            table[f"upper{tag}"] = grid[:, hi]
        for k, q in enumerate(levels):
            table[f"q{q:g}"] = grid[:, k]
    elif isinstance(output, ParametricForecast):
        for c, interval in intervals_from_output(output, BAND_COVERAGES, transform).items():
            tag = int(round(c * 100))
            table[f"lower{tag}"] = interval.lower[0]
            table[f"upper{tag}"] = interval.upper[0]
        for name, values in output.params.items():
            table[name] = values[0]
    return table


def cmd_forecast(config: RunConfig) -> Dict[str, Any]:
    """
    Forecast the hours after the last (or --origin) row of the dataset

    Raises:
        InvalidArgumentError: fewer than W hours of history before the origin
    """
    forecaster = load_checkpoint(config.require("checkpoint"))
    dataset = _model_view(_load_dataset(config.require("data")), forecaster)
    spec = forecaster.spec

    if config.origin:
        origin = int(parse_timestamps(pd.Series([config.origin]))[0])
        end = dataset.find_timestamp(origin)
        if end is None:
            raise InvalidArgumentError(f"Origin {config.origin} is not in the dataset")
    else:
        end = len(dataset) - 1
    start = end - spec.window + 1
    if start < 0 or np.any(np.diff(dataset.timestamps[start:end + 1]) != 1):
        raise InvalidArgumentError(
            f"Forecast needs {spec.window} contiguous hours of history up to the origin, "
            f"got {min(end + 1, len(dataset))}"
        )

    features = dataset.features[start:end + 1]
    future_cs = _future_clear_sky(dataset, end, spec.horizon, config.lat)
    output = forecaster.forecast(features, future_cs)
    table = forecast_table(output, forecaster.to_original)
    path = atomic_write_text(
        validate_output_path(config.out_dir / config.forecast_name),
        table.to_csv(index=False, na_rep="", float_format="%.6f", lineterminator="\n"),
    )
    logger.info(f"Wrote {len(table)}-hour forecast from origin row {end} to {path}")
    return {"forecast": str(path), "rows": len(table)}


COMMANDS = {
    "synth": cmd_synth,
    "train": cmd_train,
    "eval": cmd_eval,
    "forecast": cmd_forecast,
}


def run_command(name: str, config: RunConfig) -> Dict[str, Any]:
    """
    Route a verb to its command

    Raises:
        ConfigurationError: unknown verb
    """
    handler = COMMANDS.get(name)
    if handler is None:
        raise ConfigurationError(f"Unknown command '{name}'; available: {sorted(COMMANDS)}")
    logger.info(f"Running {name} (seed={config.seed}, out={config.out})")
    return handler(config)
