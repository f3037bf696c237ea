"""
Data models and enumerations for the solar irradiance forecaster
"""

from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config.settings import (
    DEFAULT_WINDOW,
    DEFAULT_HORIZON,
    DEFAULT_LAYERS,
    DEFAULT_HIDDEN,
    DEFAULT_LEARNING_RATE,
    DEFAULT_BATCH_SIZE,
    DEFAULT_QUANTILES,
    MAX_EPOCHS,
    PATIENCE,
    GRAD_CLIP_NORM,
    MLP_HIDDEN,
)
from .exceptions import ConfigurationError, InvalidArgumentError


# ========================================================
# Enumerations
# ========================================================

class HeadKind(Enum):
    """Output head of a forecasting network"""
    DETERMINISTIC = "det"
    QUANTILE = "qr"
    GAUSSIAN = "mle-g"
    JOHNSON_SU = "mle-jsu"
    JOHNSON_SB = "mle-jsb"
    WEIBULL = "mle-w"

    @property
    def family(self) -> Optional[str]:
        """Distribution family name for MLE heads"""
        return _HEAD_FAMILIES.get(self)

    @property
    def is_probabilistic(self) -> bool:
        return self is not HeadKind.DETERMINISTIC

    @property
    def is_parametric(self) -> bool:
        return self.family is not None

    def output_width(self, num_quantiles: int = 0) -> int:
        """Values emitted per horizon step"""
        if self is HeadKind.DETERMINISTIC:
            return 1
        if self is HeadKind.QUANTILE:
            return num_quantiles
        return _FAMILY_WIDTHS[self.family]


_HEAD_FAMILIES = {
    HeadKind.GAUSSIAN: "gaussian",
    HeadKind.JOHNSON_SU: "johnson_su",
    HeadKind.JOHNSON_SB: "johnson_sb",
    HeadKind.WEIBULL: "weibull",
}

_FAMILY_WIDTHS = {
    "gaussian": 2,
    "johnson_su": 4,
    "johnson_sb": 2,
    "weibull": 2,
}


class Architecture(Enum):
    """Network backbone"""
    LSTM = "lstm"
    MLP = "mlp"


class SelectionMetric(Enum):
    """Validation quantity used to pick the returned checkpoint"""
    VAL_LOSS = "val_loss"
    VAL_QUANTILE_LOSS = "val_quantile_loss"


# ========================================================
# Model specification
# ========================================================

@dataclass
class ModelSpec:
    """Architecture and training hyperparameters"""
    head: HeadKind = HeadKind.DETERMINISTIC
    num_features: int = 1
    arch: Architecture = Architecture.LSTM
    layers: int = DEFAULT_LAYERS
    hidden: int = DEFAULT_HIDDEN
    window: int = DEFAULT_WINDOW
    horizon: int = DEFAULT_HORIZON
    quantiles: Tuple[float, ...] = tuple(DEFAULT_QUANTILES)
    learning_rate: float = DEFAULT_LEARNING_RATE
    batch_size: int = DEFAULT_BATCH_SIZE
    seed: int = 0
    max_epochs: int = MAX_EPOCHS
    patience: int = PATIENCE
    clip_norm: float = GRAD_CLIP_NORM
    sort_quantiles: bool = False
    ace_guard: bool = True
    selection: SelectionMetric = SelectionMetric.VAL_LOSS

    def __post_init__(self):
        if isinstance(self.head, str):
            self.head = HeadKind(self.head)
        if isinstance(self.arch, str):
            self.arch = Architecture(self.arch)
        if isinstance(self.selection, str):
            self.selection = SelectionMetric(self.selection)
        self.quantiles = tuple(float(q) for q in self.quantiles)

    @classmethod
    def mlp_baseline(cls, num_features: int, **overrides) -> "ModelSpec":
        """Single hidden layer feed-forward baseline trained on MSE"""
        params = dict(
            head=HeadKind.DETERMINISTIC,
            arch=Architecture.MLP,
            num_features=num_features,
            layers=1,
            hidden=MLP_HIDDEN,
        )
        params.update(overrides)
        return cls(**params)

    @property
    def output_width(self) -> int:
        return self.head.output_width(len(self.quantiles))

    @property
    def median_index(self) -> int:
        """Index of the 0.5 level in the quantile set"""
        for i, q in enumerate(self.quantiles):
            if abs(q - 0.5) < 1e-12:
                return i
        raise ConfigurationError(
            f"Quantile set {list(self.quantiles)} must contain 0.5 for clear-sky injection"
        )

    def validate(self) -> "ModelSpec":
        """
        Pre-flight check of the specification

        Raises:
            ConfigurationError: on any inconsistent setting
        """
        for name in ("num_features", "layers", "hidden", "window", "horizon", "batch_size", "max_epochs"):
            if int(getattr(self, name)) <= 0:
                raise ConfigurationError(f"{name} must be positive, got {getattr(self, name)}")
        if self.patience < 0:
            raise ConfigurationError(f"patience must be non-negative, got {self.patience}")
        if not self.learning_rate > 0:
            raise ConfigurationError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.head is HeadKind.QUANTILE:
            if not self.quantiles:
                raise ConfigurationError("Quantile head requires a non-empty quantile set")
            qs = np.asarray(self.quantiles)
            if np.any(qs <= 0) or np.any(qs >= 1):
                raise ConfigurationError(f"Quantiles must lie in (0, 1): {list(self.quantiles)}")
            if np.any(np.diff(qs) <= 0):
                raise ConfigurationError(f"Quantiles must be strictly increasing: {list(self.quantiles)}")
            self.median_index
        if self.arch is Architecture.MLP and self.head is not HeadKind.DETERMINISTIC:
            raise ConfigurationError("The MLP baseline only supports the deterministic head")
        return self

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["head"] = self.head.value
        data["arch"] = self.arch.value
        data["selection"] = self.selection.value
        data["quantiles"] = list(self.quantiles)
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "ModelSpec":
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)


# ========================================================
# Forecast outputs (tagged union)
# ========================================================

class ForecastOutput:
    """Base of the three forecast kinds; every array is batch x horizon (x extra)"""

    kind = "base"

    @property
    def batch_size(self) -> int:
        raise NotImplementedError

    @property
    def horizon(self) -> int:
        raise NotImplementedError

    def take(self, index) -> "ForecastOutput":
        """Select batch rows"""
        raise NotImplementedError

    @classmethod
    def concatenate(cls, outputs: Sequence["ForecastOutput"]) -> "ForecastOutput":
        if not outputs:
            raise InvalidArgumentError("Cannot concatenate an empty list of forecasts")
        return outputs[0]._concat(outputs)


@dataclass
class PointForecast(ForecastOutput):
    """Point values, B x P"""
    values: np.ndarray
    kind = "point"

    @property
    def batch_size(self) -> int:
        return self.values.shape[0]

    @property
    def horizon(self) -> int:
        return self.values.shape[1]

    def take(self, index) -> "PointForecast":
        return PointForecast(self.values[index])

    def _concat(self, outputs):
        return PointForecast(np.concatenate([o.values for o in outputs], axis=0))


@dataclass
class QuantileForecast(ForecastOutput):
    """Quantile grid, B x P x |Q|"""
    values: np.ndarray
    levels: Tuple[float, ...]
    kind = "quantiles"

    @property
    def batch_size(self) -> int:
        return self.values.shape[0]

    @property
    def horizon(self) -> int:
        return self.values.shape[1]

    def level_index(self, level: float, tol: float = 1e-9) -> Optional[int]:
        for i, q in enumerate(self.levels):
            if abs(q - level) <= tol:
                return i
        return None

    def take(self, index) -> "QuantileForecast":
        return QuantileForecast(self.values[index], self.levels)

    def _concat(self, outputs):
        return QuantileForecast(np.concatenate([o.values for o in outputs], axis=0), self.levels)


@dataclass
class ParametricForecast(ForecastOutput):
    """Distribution parameters, one B x P array per parameter name"""
    params: Dict[str, np.ndarray]
    family: str
    kind = "params"

    @property
    def batch_size(self) -> int:
        return next(iter(self.params.values())).shape[0]

    @property
    def horizon(self) -> int:
        return next(iter(self.params.values())).shape[1]

    def take(self, index) -> "ParametricForecast":
        return ParametricForecast({k: v[index] for k, v in self.params.items()}, self.family)

    def _concat(self, outputs):
        return ParametricForecast(
            {k: np.concatenate([o.params[k] for o in outputs], axis=0) for k in self.params},
            self.family,
        )


# ========================================================
# Training records
# ========================================================

@dataclass
class EpochRecord:
    """One line of the training log"""
    epoch: int
    train_loss: float
    val_loss: float
    val_ace: Optional[float] = None
    val_quantile_loss: Optional[float] = None


@dataclass
class TrainingLog:
    """Per-epoch training history plus the outcome"""
    records: List[EpochRecord] = field(default_factory=list)
    best_epoch: Optional[int] = None
    stop_reason: str = ""
    diverged: bool = False

    def to_csv(self) -> str:
        """CSV with columns epoch,train_loss,val_loss,val_ace"""
        frame = pd.DataFrame(
            [(r.epoch, float(r.train_loss), float(r.val_loss), r.val_ace) for r in self.records],
            columns=["epoch", "train_loss", "val_loss", "val_ace"],
        )
        return frame.to_csv(index=False, lineterminator="\n")
