"""
Neural forecasting engine: layers, heads, networks, optimizer, training and checkpoints
"""

from .layers import Layer, Linear, Tanh, LSTMLayer, LSTMStack
from .heads import OutputHead, INJECTION_TARGETS
from .model import Network, ForecastNetwork, MLPNetwork, build_network
from .optimizer import Adam, AdamState, adam_step, clip_by_global_norm, global_norm
from .gradcheck import gradient_check, numeric_gradient, relative_error
from .trainer import Trainer, TrainingResult, train, fit_forecaster
from .checkpoint import (
    Forecaster,
    checkpoint_save,
    checkpoint_load,
    save_checkpoint,
    load_checkpoint,
    check_feature_names,
)

__all__ = [
    "Layer",
    "Linear",
    "Tanh",
    "LSTMLayer",
    "LSTMStack",
    "OutputHead",
    "INJECTION_TARGETS",
    "Network",
    "ForecastNetwork",
    "MLPNetwork",
    "build_network",
    "Adam",
    "AdamState",
    "adam_step",
    "clip_by_global_norm",
    "global_norm",
    "gradient_check",
    "numeric_gradient",
    "relative_error",
    "Trainer",
    "TrainingResult",
    "train",
    "fit_forecaster",
    "Forecaster",
    "checkpoint_save",
    "checkpoint_load",
    "save_checkpoint",
    "load_checkpoint",
    "check_feature_names",
]
