"""
Command-line argument definitions
"""

import argparse
from typing import Any, Dict, Optional, Sequence, Tuple

from core.models import Architecture, HeadKind, SelectionMetric
from .run_config import SMART_PERSISTENCE

PROG = "solar-forecast"


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, help="Random seed (default 0)")
    common.add_argument("--config", dest="config_file", help="Flat key = value settings file")
    common.add_argument("--out", help="Output directory")
    common.add_argument("--log-level", help="Logging level (DEBUG, INFO, ...)")
    return common


def _add_split_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", help="Dataset CSV")
    parser.add_argument("--test-year", type=int, help="Calendar year held out for testing")
    parser.add_argument("--val-year", type=int, help="Calendar year used for validation")
    parser.add_argument("--auto-years", action="store_true",
                        help="Pick the least correlated years as test/validation")
    parser.add_argument("--stride", type=int, help="Window stride in hours (default 1)")


def build_parser() -> argparse.ArgumentParser:
    """Parser with the synth, train, eval and forecast verbs"""
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Multi-horizon solar irradiance forecasting with probabilistic heads",
        parents=[common],
        argument_default=argparse.SUPPRESS,
    )
    sub = parser.add_subparsers(dest="command", metavar="{synth,train,eval,forecast}")
    sub.required = True

    synth = sub.add_parser("synth", parents=[common], argument_default=argparse.SUPPRESS,
                           help="Generate a synthetic high-latitude dataset")
    synth.add_argument("--years", type=int, help="Number of calendar years")
    synth.add_argument("--lat", type=float, help="Latitude in degrees")
    synth.add_argument("--start-year", type=int, help="First calendar year")
    synth.add_argument("--rho", dest="cloud_autocorrelation", type=float, help="Cloud index autocorrelation")
    synth.add_argument("--cloud-floor", type=float, help="Lower bound of the cloud index")
    synth.add_argument("--dataset-name", help="Output file name inside --out")

    train = sub.add_parser("train", parents=[common], argument_default=argparse.SUPPRESS,
                           help="Train a forecaster")
    _add_split_flags(train)
    train.add_argument("--head", choices=[h.value for h in HeadKind], help="Output head")
    train.add_argument("--arch", choices=[a.value for a in Architecture], help="Backbone")
    train.add_argument("--window", type=int, help="Input hours W")
    train.add_argument("--horizon", type=int, help="Forecast hours P")
    train.add_argument("--layers", type=int, help="LSTM layers")
    train.add_argument("--hidden", type=int, help="Hidden units")
    train.add_argument("--lr", type=float, help="Adam learning rate")
    train.add_argument("--batch-size", type=int, help="Minibatch size")
    train.add_argument("--max-epochs", type=int, help="Epoch limit")
    train.add_argument("--patience", type=int, help="Early-stopping patience in epochs")
    train.add_argument("--clip-norm", type=float, help="Global gradient-norm clip")
    train.add_argument("--quantiles", help="Comma-separated quantile levels for --head qr")
    train.add_argument("--sort-quantiles", action="store_true", help="Sort quantile outputs per step")
    train.add_argument("--no-ace-guard", dest="ace_guard", action="store_false",
                       help="Disable the validation ACE early stop")
    train.add_argument("--selection", choices=[s.value for s in SelectionMetric],
                       help="Checkpoint selection metric")
    train.add_argument("--target-feature", help="Station column used by --arch mlp")
    train.add_argument("--checkpoint-name", help="Checkpoint file name inside --out")

    evaluate = sub.add_parser("eval", parents=[common], argument_default=argparse.SUPPRESS,
                              help="Evaluate a checkpoint on the test year")
    _add_split_flags(evaluate)
    evaluate.add_argument("--checkpoint", help="Checkpoint to evaluate")
    evaluate.add_argument("--coverages", help="Comma-separated nominal coverages")
    evaluate.add_argument("--daylight-only", action="store_true", help="Score only hours with clear sky > 0")
    evaluate.add_argument("--baseline", action="append", choices=[SMART_PERSISTENCE],
                          help="Add a reference predictor row")
    evaluate.add_argument("--baseline-checkpoint", action="append",
                          help="Add a row for another trained checkpoint (repeatable)")
    evaluate.add_argument("--no-plots", action="store_true", help="Skip figure export")

    forecast = sub.add_parser("forecast", parents=[common], argument_default=argparse.SUPPRESS,
                              help="Forecast the next hours from recent data")
    forecast.add_argument("--checkpoint", help="Trained checkpoint")
    forecast.add_argument("--data", help="CSV with at least W recent hours")
    forecast.add_argument("--origin", help="Last observed hour (ISO-8601); default the last row")
    forecast.add_argument("--lat", type=float, help="Latitude for clear sky beyond the data")
    forecast.add_argument("--forecast-name", help="Output file name inside --out")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> Tuple[str, Optional[str], Optional[str], Dict[str, Any]]:
    """
    Returns:
        (command, config file, log level, explicitly given settings)
    """
    values = vars(build_parser().parse_args(argv))
    command = values.pop("command")
    config_file = values.pop("config_file", None)
    log_level = values.pop("log_level", None)
    return command, config_file, log_level, values
