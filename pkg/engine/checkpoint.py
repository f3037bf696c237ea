"""
Checkpoint container

Layout:
    8 bytes   magic b"SOLRCKPT"
    8 bytes   header length, unsigned little-endian
    N bytes   UTF-8 JSON header
    rest      float64 little-endian blob: parameters, then Adam m, then Adam v

The header records spec, scalers, feature names, seed, parameter layout
(name, shape, offset), optimizer step/betas, blob length and free-form
metadata.
"""

import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Sequence, Tuple, Union

import numpy as np

from config.logging import get_logger
from config.settings import CHECKPOINT_VERSION, EVAL_BATCH_SIZE
from core.exceptions import (
    CheckpointCorruptionError,
    CheckpointVersionError,
    ConfigurationError,
    DatasetError,
    InvalidArgumentError,
)
from core.models import ForecastOutput, ModelSpec
from core.utils import atomic_write_bytes, read_bytes, safe_json_dumps, safe_json_loads
from distributions import get_family
from timeseries.preprocessing import MinMaxScaler
from timeseries.windows import WindowBatch
from .model import Network, build_network
from .optimizer import AdamState

logger = get_logger(__name__)

MAGIC = b"SOLRCKPT"
_LENGTH = struct.Struct("<Q")
_BLOB_DTYPE = np.dtype("<f8")


@dataclass
class Forecaster:
    """
    A trained network with everything needed to forecast in original units
    """
    network: Network
    feature_scaler: MinMaxScaler
    target_scaler: MinMaxScaler
    feature_names: Tuple[str, ...]
    optimizer_state: AdamState = field(default_factory=AdamState)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def spec(self) -> ModelSpec:
        return self.network.spec

    @property
    def seed(self) -> int:
        return int(self.spec.seed)

    def predict_windows(self, windows: WindowBatch, batch_size: int = EVAL_BATCH_SIZE) -> ForecastOutput:
        """Forecast for already scaled windows (output in scaled units)"""
        return self.network.predict(windows.inputs, windows.future_clear_sky, batch_size)

    def forecast(self, features: np.ndarray, future_clear_sky: np.ndarray) -> ForecastOutput:
        """
        Forecast from raw inputs

        Args:
            features: W x D (or B x W x D) raw feature values, NaN treated as 0
            future_clear_sky: P (or B x P) clear sky in W/m^2

        Returns:
            ForecastOutput in scaled units; use to_original for W/m^2
        """
        x = np.nan_to_num(np.asarray(features, dtype=float), nan=0.0)
        cs = np.asarray(future_clear_sky, dtype=float)
        if x.ndim == 2:
            x = x[None]
        if cs.ndim == 1:
            cs = cs[None]
        if x.shape[1] != self.spec.window:
            raise InvalidArgumentError(
                f"Forecast needs a window of {self.spec.window} hours, got {x.shape[1]}"
            )
        return self.network.predict(self.feature_scaler.apply(x), self.target_scaler.apply(cs))

    def to_original(self, values: np.ndarray) -> np.ndarray:
        """
        Scaled target values to W/m^2

        For bounded-support heads (Johnson's SB, Weibull) the result is
        clipped to the fitted target range at each finite end of the support.
        """
        original = self.target_scaler.invert(values)
        family = self.spec.head.family
        if family is None:
            return original
        lower, upper = get_family(family).support
        lo = self.target_scaler.minimum[0] if np.isfinite(lower) else None
        hi = self.target_scaler.maximum[0] if np.isfinite(upper) else None
        if lo is None and hi is None:
            return original
        return np.clip(original, lo, hi)


# ========================================================
# Serialization
# ========================================================

def _layout(arrays: Dict[str, np.ndarray], start: int):
    entries = []
    offset = start
    for name, arr in arrays.items():
        entries.append({"name": name, "shape": list(arr.shape), "offset": offset})
        offset += int(arr.size)
    return entries, offset


def checkpoint_save(forecaster: Forecaster) -> bytes:
    """Serialize a forecaster to bytes"""
    params = forecaster.network.parameters()
    state = forecaster.optimizer_state
    m = {k: state.m.get(k, np.zeros_like(v)) for k, v in params.items()}
    v = {k: state.v.get(k, np.zeros_like(p)) for k, p in params.items()}

    layout, n_params = _layout(params, 0)
    pieces = [params[k].reshape(-1) for k in params]
    pieces += [m[k].reshape(-1) for k in params]
    pieces += [v[k].reshape(-1) for k in params]
    blob = np.concatenate(pieces).astype(_BLOB_DTYPE) if pieces else np.zeros(0, dtype=_BLOB_DTYPE)

    header = {
        "version": CHECKPOINT_VERSION,
        "spec": forecaster.spec.to_dict(),
        "feature_scaler": forecaster.feature_scaler.to_dict(),
        "target_scaler": forecaster.target_scaler.to_dict(),
        "feature_names": list(forecaster.feature_names),
        "seed": forecaster.seed,
        "params": layout,
        "param_count": n_params,
        "optimizer": {
            "t": int(state.t),
            "beta1": float(state.beta1),
            "beta2": float(state.beta2),
            "epsilon": float(state.epsilon),
        },
        "blob_length": int(blob.size),
        "metadata": forecaster.metadata,
    }
    header_bytes = safe_json_dumps(header).encode("utf-8")
    return MAGIC + _LENGTH.pack(len(header_bytes)) + header_bytes + blob.tobytes()


def _parse_header(data: bytes) -> Tuple[Dict, int]:
    prefix = len(MAGIC) + _LENGTH.size
    if len(data) < prefix or data[:len(MAGIC)] != MAGIC:
        raise CheckpointCorruptionError("Not a checkpoint file (bad magic or truncated prefix)")
    (length,) = _LENGTH.unpack(data[len(MAGIC):prefix])
    if len(data) < prefix + length:
        raise CheckpointCorruptionError(
            f"Truncated checkpoint header: declared {length} bytes, {len(data) - prefix} available"
        )
    try:
        header = safe_json_loads(data[prefix:prefix + length])
    except (ValueError, UnicodeDecodeError) as e:
        raise CheckpointCorruptionError(f"Malformed checkpoint header: {e}")
    if not isinstance(header, dict):
        raise CheckpointCorruptionError("Checkpoint header is not a JSON object")
    return header, prefix + length


def checkpoint_load(data: bytes) -> Forecaster:
    """
    Rebuild a forecaster from checkpoint bytes

    Raises:
        CheckpointVersionError: unsupported version
        CheckpointCorruptionError: truncated or malformed content
    """
    header, blob_start = _parse_header(data)
    version = header.get("version")
    if version != CHECKPOINT_VERSION:
        raise CheckpointVersionError(
            f"Unsupported checkpoint version {version}; this build reads version {CHECKPOINT_VERSION}"
        )
    try:
        blob_length = int(header["blob_length"])
        n_params = int(header["param_count"])
        layout = header["params"]
        spec = ModelSpec.from_dict(header["spec"])
        feature_scaler = MinMaxScaler.from_dict(header["feature_scaler"])
        target_scaler = MinMaxScaler.from_dict(header["target_scaler"])
        opt = header["optimizer"]
    except (KeyError, TypeError, ValueError, DatasetError) as e:
        raise CheckpointCorruptionError(f"Checkpoint header missing field: {e}")

    payload = data[blob_start:]
    expected = blob_length * _BLOB_DTYPE.itemsize
    if len(payload) != expected:
        raise CheckpointCorruptionError(
            f"Checkpoint blob has {len(payload)} bytes, header declares {expected}"
        )
    if blob_length != 3 * n_params:
        raise CheckpointCorruptionError(f"Blob length {blob_length} != 3 x {n_params} parameters")
    blob = np.frombuffer(payload, dtype=_BLOB_DTYPE).astype(float)

    def section(entry: Dict, base: int) -> np.ndarray:
        shape = tuple(int(s) for s in entry["shape"])
        start = base + int(entry["offset"])
        size = int(np.prod(shape)) if shape else 1
        if start < 0 or start + size > blob.size:
            raise CheckpointCorruptionError(f"Parameter {entry['name']} lies outside the blob")
        return blob[start:start + size].reshape(shape).copy()

    try:
        params = {e["name"]: section(e, 0) for e in layout}
        m = {e["name"]: section(e, n_params) for e in layout}
        v = {e["name"]: section(e, 2 * n_params) for e in layout}
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointCorruptionError(f"Malformed parameter layout: {e}")

    try:
        network = build_network(spec)
    except (ConfigurationError, InvalidArgumentError) as e:
        raise CheckpointCorruptionError(f"Checkpoint spec is inconsistent: {e}")
    try:
        network.load_parameters(params)
    except InvalidArgumentError as e:
        raise CheckpointCorruptionError(f"Parameters do not match the spec: {e}")

    state = AdamState(
        m=m, v=v,
        t=int(opt.get("t", 0)),
        beta1=float(opt.get("beta1", 0.9)),
        beta2=float(opt.get("beta2", 0.999)),
        epsilon=float(opt.get("epsilon", 1e-8)),
    )
    return Forecaster(
        network=network,
        feature_scaler=feature_scaler,
        target_scaler=target_scaler,
        feature_names=tuple(header.get("feature_names", ())),
        optimizer_state=state,
        metadata=dict(header.get("metadata") or {}),
    )


def save_checkpoint(forecaster: Forecaster, path: Union[str, Path]) -> Path:
    """Write a checkpoint file atomically"""
    target = atomic_write_bytes(path, checkpoint_save(forecaster))
    logger.info(f"Saved checkpoint ({forecaster.network.param_count()} parameters) to {target}")
    return target


def load_checkpoint(path: Union[str, Path]) -> Forecaster:
    forecaster = checkpoint_load(read_bytes(path))
    logger.info(
        f"Loaded checkpoint {path}: {forecaster.spec.arch.value}/{forecaster.spec.head.value}, "
        f"W={forecaster.spec.window}, P={forecaster.spec.horizon}"
    )
    return forecaster


def check_feature_names(forecaster: Forecaster, feature_names: Sequence[str]) -> None:
    """
    Raises:
        InvalidArgumentError: if the dataset columns differ from the training columns
    """
    if tuple(feature_names) != tuple(forecaster.feature_names):
        raise InvalidArgumentError(
            f"Dataset features {list(feature_names)} differ from the checkpoint's {list(forecaster.feature_names)}"
        )
