"""
Tests for metrics, calibration and comparison reports
"""

import json

import numpy as np
import pandas as pd
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from core.exceptions import ConfigurationError, InvalidArgumentError
from core.models import ParametricForecast, PointForecast, QuantileForecast
from evaluation import (
    EvaluationReport,
    ModelReport,
    TABLE_COLUMNS,
    ace,
    available_coverages,
    calibration_report,
    coverage_ace,
    daylight_mask,
    evaluate_forecast,
    evaluate_point,
    forecast_median,
    intervals_from_output,
    mae,
    output_quantiles,
    per_horizon_rmse,
    picp,
    quantile_loss,
    reliability,
    rmse,
    save_report,
)
from losses import pinball


def gaussian_output(mu, sigma):
    mu = np.asarray(mu, dtype=float)
    return ParametricForecast({"mu": mu, "sigma": np.full_like(mu, sigma)}, "gaussian")


class TestPointMetrics:
    """MAE, RMSE and per-horizon RMSE"""

    def test_examples(self):
        y = np.array([[0.0, 0.0], [0.0, 0.0]])
        y_hat = np.array([[1.0, -1.0], [3.0, 0.0]])
        assert mae(y, y_hat) == pytest.approx(5.0 / 4.0)
        assert rmse(y, y_hat) == pytest.approx(np.sqrt(11.0 / 4.0))

    def test_per_horizon(self):
        y = np.zeros((2, 3))
        y_hat = np.array([[1.0, 2.0, 0.0], [1.0, 0.0, 0.0]])
        np.testing.assert_allclose(per_horizon_rmse(y, y_hat), [1.0, np.sqrt(2.0), 0.0])

    def test_mask(self):
        y = np.zeros((1, 3))
        y_hat = np.array([[1.0, 5.0, 3.0]])
        mask = np.array([[True, False, True]])
        assert mae(y, y_hat, mask) == pytest.approx(2.0)
        per = per_horizon_rmse(y, y_hat, mask)
        assert np.isnan(per[1])
        assert per[2] == pytest.approx(3.0)

    def test_shape_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            mae(np.zeros(3), np.zeros(4))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(min_value=-1e3, max_value=1e3), min_size=1, max_size=30))
    def test_rmse_bounds_mae(self, errors):
        e = np.asarray(errors)
        assert rmse(e, np.zeros_like(e)) >= mae(e, np.zeros_like(e)) - 1e-9


class TestCoverage:
    """PICP and ACE"""

    def test_picp_closed_interval(self):
        y = np.array([0.0, 1.0, 2.0, 3.0])
        assert picp(y, np.full(4, 1.0), np.full(4, 2.0)) == pytest.approx(0.5)

    def test_ace(self):
        assert ace([0.8, 0.5], [0.9, 0.5]) == pytest.approx(0.05)

    def test_ace_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            ace([0.8], [0.9, 0.5])

    def test_available_coverages(self):
        assert available_coverages((0.05, 0.25, 0.5, 0.75, 0.95)) == pytest.approx([0.5, 0.9])
        assert available_coverages((0.1, 0.5)) == []

    def test_gaussian_interval_width(self):
        output = gaussian_output(np.zeros((1, 1)), 1.0)
        iv = intervals_from_output(output, [0.95])[0.95]
        assert iv.lower[0, 0] == pytest.approx(-1.959964, abs=1e-5)
        assert iv.upper[0, 0] == pytest.approx(1.959964, abs=1e-5)

    def test_interval_transform(self):
        output = gaussian_output(np.zeros((1, 1)), 1.0)
        iv = intervals_from_output(output, [0.5], transform=lambda v: 10.0 * v + 100.0)[0.5]
        assert iv.lower[0, 0] == pytest.approx(100.0 - 10.0 * stats.norm.ppf(0.75))

    def test_quantile_grid_missing_pair(self):
        output = QuantileForecast(np.zeros((1, 1, 3)), (0.1, 0.5, 0.9))
        with pytest.raises(ConfigurationError):
            intervals_from_output(output, [0.5])

    def test_point_forecast_has_no_intervals(self):
        with pytest.raises(ConfigurationError):
            intervals_from_output(PointForecast(np.zeros((1, 1))), [0.5])
        assert coverage_ace(np.zeros((1, 1)), PointForecast(np.zeros((1, 1)))) is None

    def test_calibrated_gaussian_recovers_coverage(self):
        gen = np.random.default_rng(3)
        y = gen.normal(size=(4000, 2))
        output = gaussian_output(np.zeros((4000, 2)), 1.0)
        value = coverage_ace(y, output, [0.5, 0.8, 0.9])
        assert value < 0.02

    def test_miscalibrated_gaussian(self):
        gen = np.random.default_rng(4)
        y = gen.normal(0.0, 3.0, size=(2000, 1))
        output = gaussian_output(np.zeros((2000, 1)), 1.0)
        assert coverage_ace(y, output, [0.5, 0.9]) > 0.2


class TestQuantiles:
    """Quantile extraction and reliability"""

    def test_output_quantiles_from_grid(self):
        values = np.arange(6, dtype=float).reshape(1, 2, 3)
        output = QuantileForecast(values, (0.25, 0.5, 0.75))
        grid = output_quantiles(output, [0.75, 0.25])
        np.testing.assert_array_equal(grid[0, :, 0], values[0, :, 2])
        np.testing.assert_array_equal(grid[0, :, 1], values[0, :, 0])

    def test_missing_level(self):
        output = QuantileForecast(np.zeros((1, 1, 3)), (0.25, 0.5, 0.75))
        with pytest.raises(ConfigurationError):
            output_quantiles(output, [0.9])

    def test_median(self):
        output = QuantileForecast(np.array([[[1.0, 2.0, 3.0]]]), (0.25, 0.5, 0.75))
        assert forecast_median(output)[0, 0] == 2.0
        assert forecast_median(gaussian_output([[4.0]], 2.0))[0, 0] == pytest.approx(4.0)

    def test_reliability_monotone(self):
        gen = np.random.default_rng(5)
        y = gen.normal(size=(500, 3))
        output = gaussian_output(gen.normal(0.0, 0.3, size=(500, 3)), 1.2)
        freqs = [f for _, f in reliability(y, output)]
        assert all(b >= a for a, b in zip(freqs, freqs[1:]))

    def test_reliability_on_grid_levels(self):
        output = QuantileForecast(np.zeros((2, 1, 3)), (0.25, 0.5, 0.75))
        pairs = reliability(np.zeros((2, 1)), output)
        assert [p for p, _ in pairs] == [0.25, 0.5, 0.75]

    def test_reliability_at_extreme_levels(self):
        gen = np.random.default_rng(12)
        y = gen.normal(size=(100_000, 2))
        pairs = reliability(y, gaussian_output(np.zeros((100_000, 2)), 1.0), p_grid=(0.001, 0.999))
        assert [p for p, _ in pairs] == [0.001, 0.999]
        assert pairs[0][1] == pytest.approx(0.001, abs=3e-4)
        assert pairs[1][1] == pytest.approx(0.999, abs=3e-4)

    def test_reliability_extreme_levels_on_shifted_targets(self):
        # every target far below the predictive mass
        pairs = reliability(np.full((4, 2), -50.0), gaussian_output(np.zeros((4, 2)), 1.0), p_grid=(0.001, 0.999))
        assert [f for _, f in pairs] == [1.0, 1.0]

    def test_quantile_loss_matches_training_loss(self):
        gen = np.random.default_rng(6)
        y = gen.normal(size=(10, 4))
        grid = np.sort(gen.normal(size=(10, 4, 5)), axis=-1)
        levels = (0.05, 0.25, 0.5, 0.75, 0.95)
        assert abs(quantile_loss(y, grid, levels) - pinball(y, grid, levels)) < 1e-10


class TestCalibrationReport:
    """Calibration summary"""

    def test_point_forecast(self):
        report = calibration_report(np.zeros((3, 2)), PointForecast(np.ones((3, 2))))
        assert report.ace is None
        assert report.per_horizon_rmse == pytest.approx([1.0, 1.0])
        assert report.reliability == []

    def test_quantile_grid_skips_unformable_coverages(self):
        output = QuantileForecast(np.zeros((2, 1, 5)), (0.05, 0.25, 0.5, 0.75, 0.95))
        report = calibration_report(np.zeros((2, 1)), output, coverages=(0.3, 0.5, 0.9))
        assert report.coverages == [0.5, 0.9]
        assert len(report.picp) == 2

    def test_round_trip_dict(self):
        output = gaussian_output(np.zeros((4, 2)), 1.0)
        report = calibration_report(np.zeros((4, 2)), output, coverages=(0.5,))
        data = report.to_dict()
        assert data["coverages"] == [0.5]
        assert json.loads(json.dumps(data)) == data


class TestReports:
    """Model rows, tables and report files"""

    def test_evaluate_forecast_quantile(self):
        gen = np.random.default_rng(7)
        y = gen.uniform(0.0, 1.0, (20, 3))
        grid = np.sort(gen.uniform(0.0, 1.0, (20, 3, 5)), axis=-1)
        output = QuantileForecast(grid, (0.05, 0.25, 0.5, 0.75, 0.95))
        row = evaluate_forecast("LSTM-QR", y, output)
        assert row.mae == pytest.approx(mae(y, grid[..., 2]))
        assert row.quantile_loss == pytest.approx(pinball(y, grid, output.levels))
        assert row.ace is not None

    def test_evaluate_forecast_parametric_uses_quantile_set(self):
        y = np.zeros((5, 2))
        output = gaussian_output(np.zeros((5, 2)), 1.0)
        levels = (0.1, 0.5, 0.9)
        row = evaluate_forecast("LSTM-MLE-G", y, output, quantiles=levels)
        expected = np.stack([stats.norm.ppf(p) * np.ones((5, 2)) for p in levels], axis=-1)
        assert row.quantile_loss == pytest.approx(pinball(y, expected, levels), rel=1e-9)

    def test_evaluate_forecast_transform(self):
        y = np.full((2, 2), 100.0)
        output = PointForecast(np.full((2, 2), 0.5))
        row = evaluate_forecast("LSTM", y, output, transform=lambda v: 200.0 * v)
        assert row.mae == pytest.approx(0.0)
        assert row.quantile_loss is None
        assert row.ace is None

    def test_evaluate_point(self):
        row = evaluate_point("smart-persistence", np.zeros((2, 2)), np.ones((2, 2)))
        assert row.rmse == pytest.approx(1.0)
        assert row.calibration.per_horizon_rmse == pytest.approx([1.0, 1.0])

    def test_daylight_mask(self):
        np.testing.assert_array_equal(daylight_mask([0.0, 0.5, -1.0]), [False, True, False])

    def test_table(self):
        report = EvaluationReport(metadata={"seed": 0})
        report.add(ModelReport("LSTM-QR", 10.0, 20.0, 3.0, 0.05))
        report.add(ModelReport("smart-persistence", 30.0, 40.0))
        frame = report.to_frame()
        assert tuple(frame.columns) == TABLE_COLUMNS
        assert report.get("smart-persistence").rmse == 40.0
        assert report.get("absent") is None

    def test_csv_leaves_missing_scores_empty(self):
        report = EvaluationReport()
        report.add(ModelReport("smart-persistence", 30.0, 40.0))
        lines = report.to_csv().splitlines()
        assert lines[0] == "model,MAE,RMSE,quantile_loss,ACE"
        assert lines[1] == "smart-persistence,30.000000,40.000000,,"

    def test_json_round_trip(self):
        report = EvaluationReport(metadata={"test_year": 2020})
        report.add(ModelReport("LSTM", 1.0, 2.0))
        restored = EvaluationReport.from_dict(json.loads(report.to_json()))
        assert restored.metadata == {"test_year": 2020}
        assert restored.rows[0].model == "LSTM"
        assert restored.rows[0].quantile_loss is None

    def test_save_report(self, temp_dir):
        report = EvaluationReport()
        report.add(ModelReport("LSTM", 1.0, 2.0))
        json_path, csv_path = save_report(report, temp_dir / "run")
        assert json.loads(json_path.read_text(encoding="utf-8"))["models"][0]["model"] == "LSTM"
        assert pd.read_csv(csv_path)["RMSE"].iloc[0] == pytest.approx(2.0)

    def test_save_report_is_deterministic(self, temp_dir):
        report = EvaluationReport(metadata={"seed": 1})
        report.add(ModelReport("LSTM", 1.0, 2.0))
        a, _ = save_report(report, temp_dir / "a")
        b, _ = save_report(report, temp_dir / "b")
        assert a.read_bytes() == b.read_bytes()
