"""
Minibatch training loop with early stopping, the ACE guard and divergence handling
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from config.logging import TrainingProgress, get_logger
from config.settings import (
    ACE_GUARD_FACTOR,
    ACE_GUARD_PATIENCE,
    DEFAULT_COVERAGES,
    DEFAULT_QUANTILES,
    EVAL_BATCH_SIZE,
)
from core.exceptions import ConfigurationError, InvalidArgumentError, TrainingError
from core.models import EpochRecord, ModelSpec, SelectionMetric, TrainingLog
from evaluation.calibration import coverage_ace, output_quantiles
from losses import compute_objective, objective_value, pinball
from timeseries.dataset import Dataset
from timeseries.preprocessing import scale_dataset, scaler_fit
from timeseries.windows import WindowBatch, make_windows
from .checkpoint import Forecaster
from .model import Network, build_network
from .optimizer import Adam, AdamState, clip_by_global_norm

logger = get_logger(__name__)


@dataclass
class _Snapshot:
    epoch: int
    params: Dict[str, np.ndarray]
    optimizer: AdamState


@dataclass
class TrainingResult:
    """Trained network restored to the selected epoch, its optimizer state and the log"""
    network: Network
    optimizer_state: AdamState
    log: TrainingLog = field(default_factory=TrainingLog)

    @property
    def diverged(self) -> bool:
        return self.log.diverged

    @property
    def best_epoch(self) -> Optional[int]:
        return self.log.best_epoch


class Trainer:
    """
    Fits a network on windowed training data

    Shuffling uses default_rng(seed + 1); initialisation uses default_rng(seed).
    Validation runs every epoch. The returned parameters are those of the
    epoch with the best selection metric, unless the ACE guard fires first.
    """

    def __init__(self, spec: ModelSpec, network: Optional[Network] = None,
                 coverages=DEFAULT_COVERAGES, eval_quantiles=DEFAULT_QUANTILES,
                 ace_guard_factor: float = ACE_GUARD_FACTOR, ace_guard_patience: int = ACE_GUARD_PATIENCE):
        self.spec = spec.validate()
        self.network = network if network is not None else build_network(spec)
        self.coverages = tuple(coverages)
        self.eval_quantiles = tuple(eval_quantiles)
        self.ace_guard_factor = float(ace_guard_factor)
        self.ace_guard_patience = int(ace_guard_patience)
        self.optimizer = Adam(lr=spec.learning_rate)

    # ------------------------------------------------------------------

    def _snapshot(self, epoch: int) -> _Snapshot:
        return _Snapshot(
            epoch=epoch,
            params={k: v.copy() for k, v in self.network.parameters().items()},
            optimizer=self.optimizer.state.copy(),
        )

    def _restore(self, snap: _Snapshot) -> None:
        self.network.load_parameters(snap.params)
        self.optimizer.state = snap.optimizer.copy()

    def _train_epoch(self, data: WindowBatch, rng: np.random.Generator) -> float:
        order = rng.permutation(len(data))
        total, count = 0.0, 0
        for start in range(0, len(order), self.spec.batch_size):
            idx = order[start:start + self.spec.batch_size]
            self.network.zero_grad()
            output = self.network.forward(data.inputs[idx], data.future_clear_sky[idx])
            loss, grad = compute_objective(output, data.targets[idx])
            if not np.isfinite(loss):
                raise TrainingError(f"Non-finite training loss {loss}")
            self.network.backward(grad)
            grads = self.network.gradients()
            clip_by_global_norm(grads, self.spec.clip_norm)
            self.optimizer.step(self.network.parameters(), grads)
            total += loss * len(idx)
            count += len(idx)
        return total / count

    def validate(self, data: WindowBatch):
        """
        Validation loss, ACE (probabilistic heads) and quantile loss on scaled data
        """
        output = self.network.predict(data.inputs, data.future_clear_sky, EVAL_BATCH_SIZE)
        loss = objective_value(output, data.targets)
        val_ace = None
        val_qloss = None
        if self.spec.head.is_probabilistic:
            val_ace = coverage_ace(data.targets, output, self.coverages)
            levels = self.eval_quantiles if self.spec.head.is_parametric else output.levels
            val_qloss = pinball(data.targets, output_quantiles(output, levels), levels)
        return loss, val_ace, val_qloss

    def _selection_value(self, record: EpochRecord) -> float:
        if self.spec.selection is SelectionMetric.VAL_QUANTILE_LOSS and record.val_quantile_loss is not None:
            return record.val_quantile_loss
        return record.val_loss

    # ------------------------------------------------------------------

    def fit(self, train: WindowBatch, val: WindowBatch) -> TrainingResult:
        """
        Train until max_epochs, patience exhaustion, ACE guard or divergence

        Args:
            train: Scaled training windows
            val: Scaled validation windows

        Returns:
            TrainingResult; on divergence the last selected parameters with log.diverged set

        Raises:
            InvalidArgumentError: on an empty split
        """
        if len(train) == 0 or len(val) == 0:
            raise InvalidArgumentError(f"Training needs non-empty splits (train={len(train)}, val={len(val)})")
        spec = self.spec
        rng = np.random.default_rng(spec.seed + 1)
        log = TrainingLog()
        best = self._snapshot(0)
        best_value = np.inf
        since_best = 0
        ace_min = np.inf
        rise_streak = 0
        pre_rise: Optional[_Snapshot] = None

        progress = TrainingProgress(logger, f"{spec.arch.value}/{spec.head.value}")
        progress.info(
            f"Training on {len(train)} train / {len(val)} val windows, "
            f"{self.network.param_count()} parameters, lr={spec.learning_rate}, batch={spec.batch_size}"
        )

        for epoch in range(1, spec.max_epochs + 1):
            try:
                train_loss = self._train_epoch(train, rng)
                val_loss, val_ace, val_qloss = self.validate(val)
                if not np.isfinite(val_loss):
                    raise TrainingError(f"Non-finite validation loss {val_loss}")
            except TrainingError as e:
                progress.error(f"Training diverged at epoch {epoch}: {e}; keeping epoch {best.epoch}")
                self.network.clear_cache()
                self._restore(best)
                log.best_epoch = best.epoch
                log.stop_reason = "diverged"
                log.diverged = True
                return TrainingResult(self.network, self.optimizer.state, log)

            record = EpochRecord(epoch, train_loss, val_loss, val_ace, val_qloss)
            log.records.append(record)
            ace_text = "" if val_ace is None else f", val_ace={val_ace:.4f}"
            progress.epoch(epoch, f"train_loss={train_loss:.6g}, val_loss={val_loss:.6g}{ace_text}")

            rising = False
            if spec.ace_guard and val_ace is not None:
                rising = val_ace > self.ace_guard_factor * ace_min
                if rising and rise_streak == 0:
                    pre_rise = best
                rise_streak = rise_streak + 1 if rising else 0
                if not rising:
                    pre_rise = None
                ace_min = min(ace_min, val_ace)

            value = self._selection_value(record)
            if value < best_value:
                best_value = value
                best = self._snapshot(epoch)
                since_best = 0
            else:
                since_best += 1

            if rising and rise_streak >= self.ace_guard_patience and pre_rise is not None:
                progress.warning(
                    f"ACE guard: validation ACE above {self.ace_guard_factor}x its minimum for "
                    f"{rise_streak} evaluations; returning epoch {pre_rise.epoch}"
                )
                best = pre_rise
                log.stop_reason = "ace_guard"
                break
            if since_best >= spec.patience:
                log.stop_reason = "patience"
                break
        else:
            log.stop_reason = "max_epochs"

        self._restore(best)
        log.best_epoch = best.epoch
        progress.info(f"Training stopped ({log.stop_reason}); selected epoch {best.epoch}")
        return TrainingResult(self.network, self.optimizer.state, log)


def train(spec: ModelSpec, train_windows: WindowBatch, val_windows: WindowBatch) -> TrainingResult:
    """Build a network from the spec and fit it"""
    return Trainer(spec).fit(train_windows, val_windows)


def fit_forecaster(spec: ModelSpec, train_data: Dataset, val_data: Dataset, stride: int = 1,
                   metadata: Optional[Dict] = None) -> Tuple[Forecaster, TrainingResult]:
    """
    Scale, window and train on raw train/validation datasets

    Scalers are fitted on the training split only.

    Raises:
        ConfigurationError: if spec.num_features differs from the dataset
    """
    if spec.num_features != train_data.num_features:
        raise ConfigurationError(
            f"Spec expects {spec.num_features} features, dataset has {train_data.num_features}"
        )
    feature_scaler, target_scaler = scaler_fit(train_data)
    train_windows = make_windows(scale_dataset(train_data, feature_scaler, target_scaler),
                                 spec.window, spec.horizon, stride)
    val_windows = make_windows(scale_dataset(val_data, feature_scaler, target_scaler),
                               spec.window, spec.horizon, stride)
    result = Trainer(spec).fit(train_windows, val_windows)
    forecaster = Forecaster(
        network=result.network,
        feature_scaler=feature_scaler,
        target_scaler=target_scaler,
        feature_names=tuple(train_data.feature_names),
        optimizer_state=result.optimizer_state,
        metadata=dict(metadata or {}),
    )
    forecaster.metadata.update({"best_epoch": result.best_epoch, "stop_reason": result.log.stop_reason})
    return forecaster, result
