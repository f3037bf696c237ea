"""
Report figures
"""

from .themes import COLORS, get_report_template
from .visualizers import (
    SUMMER_MONTHS,
    WINTER_MONTHS,
    ErrorProfileVisualizer,
    CalibrationVisualizer,
    ForecastVisualizer,
    seasonal_stretch,
    export_figure,
    export_figures,
)

__all__ = [
    "COLORS",
    "get_report_template",
    "SUMMER_MONTHS",
    "WINTER_MONTHS",
    "ErrorProfileVisualizer",
    "CalibrationVisualizer",
    "ForecastVisualizer",
    "seasonal_stretch",
    "export_figure",
    "export_figures",
]
