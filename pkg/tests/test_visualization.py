"""
Tests for report figures
"""

import numpy as np
import plotly.graph_objects as go

from evaluation.calibration import CalibrationReport
from visualization import (
    SUMMER_MONTHS,
    WINTER_MONTHS,
    CalibrationVisualizer,
    ErrorProfileVisualizer,
    ForecastVisualizer,
    export_figures,
    seasonal_stretch,
)

# 2017-06-01T00:00 and 2017-01-01T00:00 in hours since the epoch
JUNE_2017 = int(np.datetime64("2017-06-01T00", "h").astype(np.int64))
JANUARY_2017 = int(np.datetime64("2017-01-01T00", "h").astype(np.int64))


def calibration(ace=None, coverages=(), picp=(), reliability=()):
    return CalibrationReport(
        coverages=list(coverages),
        picp=list(picp),
        ace=ace,
        reliability=list(reliability),
        per_horizon_rmse=[1.0, 2.0],
    )


class TestSeasonalStretch:
    """Picking consecutive windows for trace plots"""

    def test_chains_consecutive_windows(self):
        origins = JUNE_2017 + np.arange(0, 24 * 10, 12)
        chain = seasonal_stretch(origins, 36, SUMMER_MONTHS)
        assert chain is not None
        assert np.all(np.diff(origins[chain]) == 36)

    def test_wrong_season(self):
        origins = JUNE_2017 + np.arange(0, 24 * 10, 12)
        assert seasonal_stretch(origins, 36, WINTER_MONTHS) is None

    def test_broken_chain(self):
        origins = np.array([JANUARY_2017, JANUARY_2017 + 36])
        assert seasonal_stretch(origins, 36, WINTER_MONTHS) is None

    def test_empty(self):
        assert seasonal_stretch([], 36, SUMMER_MONTHS) is None


class TestFigures:
    """Figure construction (no export)"""

    def test_horizon_rmse(self):
        fig = ErrorProfileVisualizer().create_horizon_rmse_plot({"LSTM": [1.0, 2.0, 3.0], "MLP": [2.0, 2.0, 2.0]})
        assert isinstance(fig, go.Figure)
        assert len(fig.data) == 2
        assert list(fig.data[0].x) == [1, 2, 3]

    def test_picp_skips_point_models(self):
        reports = {
            "LSTM-MLE-G": calibration(0.01, [0.5, 0.9], [0.49, 0.9]),
            "LSTM": calibration(),
        }
        fig = CalibrationVisualizer().create_picp_plot(reports)
        # ideal diagonal plus one model
        assert len(fig.data) == 2
        assert "ACE" in fig.data[1].name

    def test_reliability(self):
        reports = {"LSTM-QR": calibration(reliability=[(0.1, 0.12), (0.5, 0.5)])}
        fig = CalibrationVisualizer().create_reliability_plot(reports)
        assert list(fig.data[1].x) == [0.1, 0.5]

    def test_band_plot_draws_wide_band_first(self):
        hours = JUNE_2017 + np.arange(4)
        bands = {0.5: (np.zeros(4), np.ones(4)), 0.9: (-np.ones(4), 2 * np.ones(4))}
        fig = ForecastVisualizer().create_band_plot(hours, np.ones(4), np.ones(4), bands)
        filled = [t.name for t in fig.data if t.fill == "tonexty"]
        assert filled == ["90% interval", "50% interval"]

    def test_point_trace_with_persistence(self):
        hours = JUNE_2017 + np.arange(3)
        fig = ForecastVisualizer().create_point_trace_plot(hours, np.ones(3), np.ones(3), np.zeros(3))
        assert [t.name for t in fig.data] == ["observed", "forecast", "smart persistence"]


class TestExport:
    """SVG export"""

    def test_failed_export_is_skipped(self, temp_dir, monkeypatch):
        def broken(self, *args, **kwargs):
            raise RuntimeError("no renderer")

        monkeypatch.setattr(go.Figure, "to_image", broken)
        written = export_figures({"rmse": go.Figure()}, temp_dir)
        assert written == {}
        assert not (temp_dir / "rmse.svg").exists()
