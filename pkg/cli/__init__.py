"""
Command-line interface
"""

from .run_config import RunConfig, SMART_PERSISTENCE
from .parser import build_parser, parse_args
from .commands import (
    COMMANDS,
    cmd_synth,
    cmd_train,
    cmd_eval,
    cmd_forecast,
    forecast_table,
    model_label,
    run_command,
)

__all__ = [
    "RunConfig",
    "SMART_PERSISTENCE",
    "build_parser",
    "parse_args",
    "COMMANDS",
    "cmd_synth",
    "cmd_train",
    "cmd_eval",
    "cmd_forecast",
    "forecast_table",
    "model_label",
    "run_command",
]
