"""
Static report figures (plotly, exported to SVG through kaleido)
"""

from pathlib import Path
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import plotly.graph_objects as go

from config.logging import get_logger
from core.utils import atomic_write_bytes
from evaluation.calibration import CalibrationReport
from .themes import COLORS, get_report_template

logger = get_logger(__name__)

SUMMER_MONTHS = (6, 7, 8)
WINTER_MONTHS = (12, 1, 2)
STRETCH_WINDOWS = 3

Band = Tuple[np.ndarray, np.ndarray]


def _hours_to_datetimes(hours) -> np.ndarray:
    return np.asarray(hours, dtype=np.int64).astype("datetime64[h]")


def _month_of(hours) -> np.ndarray:
    months = _hours_to_datetimes(hours).astype("datetime64[M]").astype(np.int64)
    return months % 12 + 1


def seasonal_stretch(origins, horizon: int, months: Sequence[int],
                     count: int = STRETCH_WINDOWS) -> Optional[np.ndarray]:
    """
    Indices of `count` windows whose forecasts tile consecutive hours

    Window k+1 starts where window k's horizon ends. The first run whose
    starting origin lies in one of `months` is returned, or None.
    """
    origins = np.asarray(origins, dtype=np.int64)
    if origins.size == 0:
        return None
    position = {int(o): i for i, o in enumerate(origins)}
    in_season = np.isin(_month_of(origins), list(months))
    for start in np.flatnonzero(in_season):
        chain = [int(start)]
        for k in range(1, count):
            nxt = position.get(int(origins[start]) + k * horizon)
            if nxt is None:
                break
            chain.append(nxt)
        if len(chain) == count:
            return np.asarray(chain)
    return None


class ErrorProfileVisualizer:
    """Error profile across the forecast horizon"""

    def create_horizon_rmse_plot(self, curves: Mapping[str, Sequence[float]]) -> go.Figure:
        """RMSE per horizon hour, one line per model"""
        fig = go.Figure()
        for name, values in curves.items():
            values = np.asarray(values, dtype=float)
            fig.add_trace(go.Scatter(
                x=np.arange(1, values.size + 1),
                y=values,
                mode="lines+markers",
                name=name,
                marker=dict(size=4),
            ))
        fig.update_layout(
            template=get_report_template(),
            title="RMSE across the forecast horizon",
            xaxis_title="Horizon (h)",
            yaxis_title="RMSE (W/m²)",
        )
        return fig


class CalibrationVisualizer:
    """PICP and reliability diagrams"""

    def _ideal(self, fig: go.Figure) -> None:
        fig.add_trace(go.Scatter(
            x=[0.0, 1.0],
            y=[0.0, 1.0],
            mode="lines",
            name="ideal",
            line=dict(color=COLORS["ideal"], dash="dash", width=1),
        ))

    def create_picp_plot(self, reports: Mapping[str, CalibrationReport]) -> go.Figure:
        """Observed coverage against nominal coverage"""
        fig = go.Figure()
        self._ideal(fig)
        for name, report in reports.items():
            if not report.coverages:
                continue
            fig.add_trace(go.Scatter(
                x=list(report.coverages),
                y=list(report.picp),
                mode="lines+markers",
                name=name if report.ace is None else f"{name} (ACE {report.ace:.3f})",
            ))
        fig.update_layout(
            template=get_report_template(),
            title="Prediction interval coverage",
            xaxis_title="Nominal coverage",
            yaxis_title="Observed coverage (PICP)",
            xaxis_range=[0, 1],
            yaxis_range=[0, 1],
        )
        return fig

    def create_reliability_plot(self, reports: Mapping[str, CalibrationReport]) -> go.Figure:
        """Observed frequency of y below each predicted quantile"""
        fig = go.Figure()
        self._ideal(fig)
        for name, report in reports.items():
            if not report.reliability:
                continue
            levels, freqs = zip(*report.reliability)
            fig.add_trace(go.Scatter(x=list(levels), y=list(freqs), mode="lines+markers", name=name))
        fig.update_layout(
            template=get_report_template(),
            title="Reliability",
            xaxis_title="Quantile level",
            yaxis_title="Observed frequency",
            xaxis_range=[0, 1],
            yaxis_range=[0, 1],
        )
        return fig


class ForecastVisualizer:
    """Forecast traces over consecutive 36 h windows"""

    def create_band_plot(self, hours, observed, median, bands: Mapping[float, Band],
                         title: str = "Forecast bands") -> go.Figure:
        """
        Observed series, predictive median and central bands

        Args:
            hours: Target hours (hours since epoch)
            observed: Observations in W/m^2
            median: Median forecast in W/m^2
            bands: {coverage: (lower, upper)}; wider bands are drawn first
        """
        x = _hours_to_datetimes(hours)
        fig = go.Figure()
        for coverage in sorted(bands, reverse=True):
            lower, upper = bands[coverage]
            color = COLORS["band90"] if coverage >= 0.75 else COLORS["band50"]
            fig.add_trace(go.Scatter(x=x, y=np.asarray(upper), mode="lines", line=dict(width=0),
                                     showlegend=False, hoverinfo="skip"))
            fig.add_trace(go.Scatter(x=x, y=np.asarray(lower), mode="lines", line=dict(width=0),
                                     fill="tonexty", fillcolor=color, name=f"{int(round(coverage * 100))}% interval"))
        fig.add_trace(go.Scatter(x=x, y=np.asarray(median), mode="lines", name="median",
                                 line=dict(color=COLORS["forecast"], width=2)))
        fig.add_trace(go.Scatter(x=x, y=np.asarray(observed), mode="lines", name="observed",
                                 line=dict(color=COLORS["observed"], width=1.5)))
        fig.update_layout(
            template=get_report_template(),
            title=title,
            xaxis_title="Time",
            yaxis_title="Irradiance (W/m²)",
        )
        return fig

    def create_point_trace_plot(self, hours, observed, forecast, persistence: Optional[np.ndarray] = None,
                                title: str = "Point forecast") -> go.Figure:
        """Point forecast against observations and smart persistence"""
        x = _hours_to_datetimes(hours)
        fig = go.Figure()
        fig.add_trace(go.Scatter(x=x, y=np.asarray(observed), mode="lines", name="observed",
                                 line=dict(color=COLORS["observed"], width=1.5)))
        fig.add_trace(go.Scatter(x=x, y=np.asarray(forecast), mode="lines", name="forecast",
                                 line=dict(color=COLORS["forecast"], width=2)))
        if persistence is not None:
            fig.add_trace(go.Scatter(x=x, y=np.asarray(persistence), mode="lines", name="smart persistence",
                                     line=dict(color=COLORS["persistence"], width=1.5, dash="dot")))
        fig.update_layout(
            template=get_report_template(),
            title=title,
            xaxis_title="Time",
            yaxis_title="Irradiance (W/m²)",
        )
        return fig


def export_figure(fig: go.Figure, path: Union[str, Path]) -> Optional[Path]:
    """
    Write a figure as a standalone SVG

    Export failures (kaleido missing or broken) are logged and skipped.

    Returns:
        Written path, or None when export failed
    """
    try:
        svg = fig.to_image(format="svg")
    except Exception as e:
        logger.warning(f"Could not render {path}: {e}")
        return None
    target = atomic_write_bytes(path, svg)
    logger.debug(f"Wrote figure {target}")
    return target


def export_figures(figures: Dict[str, go.Figure], out_dir: Union[str, Path]) -> Dict[str, Path]:
    """Export every figure as `<out_dir>/<name>.svg`; returns the ones written"""
    written = {}
    for name, fig in figures.items():
        target = export_figure(fig, Path(out_dir) / f"{name}.svg")
        if target is not None:
            written[name] = target
    return written
