"""
Run configuration: settings defaults < config file < command-line flags
"""

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple, Union

from dotenv import dotenv_values

from config.logging import get_logger
from config.settings import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_CLOUD_AUTOCORRELATION,
    DEFAULT_CLOUD_FLOOR,
    DEFAULT_COVERAGES,
    DEFAULT_HIDDEN,
    DEFAULT_HORIZON,
    DEFAULT_LATITUDE,
    DEFAULT_LAYERS,
    DEFAULT_LEARNING_RATE,
    DEFAULT_QUANTILES,
    DEFAULT_START_YEAR,
    DEFAULT_WINDOW,
    DEFAULT_YEAR_COUNT,
    GRAD_CLIP_NORM,
    MAX_EPOCHS,
    MLP_HIDDEN,
    OUTPUT_DIR,
    PATIENCE,
)
from core.exceptions import ConfigurationError
from core.models import Architecture, HeadKind, ModelSpec, SelectionMetric
from core.validators import validate_input_path, validate_quantile_set

logger = get_logger(__name__)

SMART_PERSISTENCE = "smart-persistence"
TRUE_VALUES = ("true", "1", "yes", "on")
FALSE_VALUES = ("false", "0", "no", "off")


def parse_bool(raw: Union[str, bool]) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in TRUE_VALUES:
        return True
    if text in FALSE_VALUES:
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def parse_float_list(raw) -> Tuple[float, ...]:
    if isinstance(raw, (list, tuple)):
        return tuple(float(v) for v in raw)
    return tuple(float(v) for v in str(raw).split(",") if v.strip())


def parse_str_list(raw) -> Tuple[str, ...]:
    if isinstance(raw, (list, tuple)):
        return tuple(str(v) for v in raw)
    return tuple(v.strip() for v in str(raw).split(",") if v.strip())


def parse_optional_int(raw) -> Optional[int]:
    if raw is None or (isinstance(raw, str) and raw.strip() == ""):
        return None
    return int(raw)


@dataclass
class RunConfig:
    """
    Every setting of a CLI run, with its default

    Config files use the field names as keys (dashes are accepted in place
    of underscores). Paths that are not absolute are taken relative to the
    working directory.
    """
    # global
    seed: int = 0
    out: str = OUTPUT_DIR

    # synth
    years: int = DEFAULT_YEAR_COUNT
    lat: float = DEFAULT_LATITUDE
    start_year: int = DEFAULT_START_YEAR
    cloud_autocorrelation: float = DEFAULT_CLOUD_AUTOCORRELATION
    cloud_floor: float = DEFAULT_CLOUD_FLOOR
    dataset_name: str = "dataset.csv"

    # data and split
    data: Optional[str] = None
    test_year: Optional[int] = None
    val_year: Optional[int] = None
    auto_years: bool = False
    stride: int = 1
    target_feature: str = "ghi"

    # model
    head: str = HeadKind.DETERMINISTIC.value
    arch: str = Architecture.LSTM.value
    window: int = DEFAULT_WINDOW
    horizon: int = DEFAULT_HORIZON
    layers: int = DEFAULT_LAYERS
    hidden: Optional[int] = None
    lr: float = DEFAULT_LEARNING_RATE
    batch_size: int = DEFAULT_BATCH_SIZE
    max_epochs: int = MAX_EPOCHS
    patience: int = PATIENCE
    clip_norm: float = GRAD_CLIP_NORM
    quantiles: Tuple[float, ...] = tuple(DEFAULT_QUANTILES)
    sort_quantiles: bool = False
    ace_guard: bool = True
    selection: str = SelectionMetric.VAL_LOSS.value
    checkpoint_name: str = "model.ckpt"

    # eval / forecast
    checkpoint: Optional[str] = None
    coverages: Tuple[float, ...] = tuple(DEFAULT_COVERAGES)
    daylight_only: bool = False
    baseline: Tuple[str, ...] = ()
    baseline_checkpoint: Tuple[str, ...] = ()
    no_plots: bool = False
    origin: Optional[str] = None
    forecast_name: str = "forecast.csv"

    # ------------------------------------------------------------------

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_sources(cls, file_values: Optional[Mapping[str, Any]] = None,
                     flag_values: Optional[Mapping[str, Any]] = None) -> "RunConfig":
        """
        Layer config-file values and explicit flags over the defaults

        Raises:
            ConfigurationError: unknown keys or values that do not parse
        """
        config = cls()
        for source, values in (("config file", file_values or {}), ("flags", flag_values or {})):
            for raw_key, raw_value in values.items():
                key = str(raw_key).strip().replace("-", "_")
                if key not in _PARSERS:
                    raise ConfigurationError(f"Unknown setting '{raw_key}' in {source}")
                try:
                    value = _PARSERS[key](raw_value)
                except (TypeError, ValueError) as e:
                    raise ConfigurationError(f"Invalid value for '{raw_key}' in {source}: {e}")
                setattr(config, key, value)
        return config

    @classmethod
    def from_file(cls, path: Union[str, Path], flag_values: Optional[Mapping[str, Any]] = None) -> "RunConfig":
        """Parse a flat `key = value` file, then apply flags"""
        source = validate_input_path(path)
        file_values = {k: v for k, v in dotenv_values(source).items() if v is not None}
        logger.debug(f"Loaded {len(file_values)} settings from {source}")
        return cls.from_sources(file_values, flag_values)

    # ------------------------------------------------------------------

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def resolved_hidden(self) -> int:
        if self.hidden is not None:
            return int(self.hidden)
        return MLP_HIDDEN if self.arch == Architecture.MLP.value else DEFAULT_HIDDEN

    def model_spec(self, num_features: int) -> ModelSpec:
        """
        ModelSpec from the model settings, checked before any training

        Raises:
            ConfigurationError: unknown head/arch or inconsistent settings
        """
        try:
            head = HeadKind(self.head)
            arch = Architecture(self.arch)
            selection = SelectionMetric(self.selection)
        except ValueError as e:
            raise ConfigurationError(str(e))
        quantiles = tuple(self.quantiles)
        if head is HeadKind.QUANTILE:
            quantiles = validate_quantile_set(quantiles)
        spec = ModelSpec(
            head=head,
            num_features=num_features,
            arch=arch,
            layers=1 if arch is Architecture.MLP else self.layers,
            hidden=self.resolved_hidden(),
            window=self.window,
            horizon=self.horizon,
            quantiles=quantiles,
            learning_rate=self.lr,
            batch_size=self.batch_size,
            seed=self.seed,
            max_epochs=self.max_epochs,
            patience=self.patience,
            clip_norm=self.clip_norm,
            sort_quantiles=self.sort_quantiles,
            ace_guard=self.ace_guard,
            selection=selection,
        )
        return spec.validate()

    def require(self, name: str) -> Any:
        """Value of a setting that has no usable default for this command"""
        value = getattr(self, name)
        if value is None:
            raise ConfigurationError(f"--{name.replace('_', '-')} is required")
        return value

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


_PARSERS: Dict[str, Callable[[Any], Any]] = {
    "seed": int,
    "out": str,
    "years": int,
    "lat": float,
    "start_year": int,
    "cloud_autocorrelation": float,
    "cloud_floor": float,
    "dataset_name": str,
    "data": str,
    "test_year": parse_optional_int,
    "val_year": parse_optional_int,
    "auto_years": parse_bool,
    "stride": int,
    "target_feature": str,
    "head": str,
    "arch": str,
    "window": int,
    "horizon": int,
    "layers": int,
    "hidden": parse_optional_int,
    "lr": float,
    "batch_size": int,
    "max_epochs": int,
    "patience": int,
    "clip_norm": float,
    "quantiles": parse_float_list,
    "sort_quantiles": parse_bool,
    "ace_guard": parse_bool,
    "selection": str,
    "checkpoint_name": str,
    "checkpoint": str,
    "coverages": parse_float_list,
    "daylight_only": parse_bool,
    "baseline": parse_str_list,
    "baseline_checkpoint": parse_str_list,
    "no_plots": parse_bool,
    "origin": str,
    "forecast_name": str,
}
