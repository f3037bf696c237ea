"""
Single-station feed-forward baseline
"""

from typing import Dict, Optional, Tuple

from config.logging import get_logger
from core.exceptions import ConfigurationError
from core.models import Architecture, HeadKind, ModelSpec
from engine import Forecaster, TrainingResult, fit_forecaster
from timeseries.dataset import Dataset
from timeseries.preprocessing import select_features, single_station_features

logger = get_logger(__name__)


def mlp_baseline_spec(num_features: int, spec: Optional[ModelSpec] = None) -> ModelSpec:
    """
    MLP spec sharing window, horizon and training settings with ``spec``

    Raises:
        ConfigurationError: if ``spec`` asks for a probabilistic head
    """
    if spec is None:
        return ModelSpec.mlp_baseline(num_features)
    if spec.head is not HeadKind.DETERMINISTIC:
        raise ConfigurationError(f"The MLP baseline is trained on MSE; head '{spec.head.value}' is not supported")
    overrides = spec.to_dict()
    overrides.pop("num_features", None)
    overrides.pop("arch", None)
    overrides.pop("head", None)
    if spec.arch is not Architecture.MLP:
        # LSTM sizes do not carry over
        overrides.pop("hidden", None)
        overrides.pop("layers", None)
    return ModelSpec.mlp_baseline(num_features, **overrides)


def mlp_baseline_train(train_data: Dataset, val_data: Dataset, spec: Optional[ModelSpec] = None,
                       stride: int = 1, target_feature: str = "ghi",
                       metadata: Optional[Dict] = None) -> Tuple[Forecaster, TrainingResult]:
    """
    Train the single-station MLP on the station target channel plus time embeddings

    Args:
        train_data: Raw training split (all features; the station columns are selected here)
        val_data: Raw validation split
        spec: Optional spec supplying window, horizon and training settings
        stride: Window stride
        target_feature: Name of the station observation column

    Returns:
        (Forecaster, TrainingResult); the forecaster records the selected columns
    """
    names = single_station_features(train_data, target_feature)
    train_sel = select_features(train_data, names)
    val_sel = select_features(val_data, names)
    mlp_spec = mlp_baseline_spec(len(names), spec).validate()
    logger.info(f"Single-station MLP on {list(names)}: hidden={mlp_spec.hidden}, W={mlp_spec.window}")
    info = {"baseline": "mlp", "target_feature": target_feature}
    info.update(metadata or {})
    return fit_forecaster(mlp_spec, train_sel, val_sel, stride=stride, metadata=info)
