"""
Training objectives: mean squared error, pinball loss, negative log-likelihood

Every loss uses mean reduction over all entries. The *_grad functions return
the gradient of that mean with respect to the prediction.
"""

from typing import Dict, Mapping, Sequence, Tuple, Union

import numpy as np

from config.logging import get_logger
from config.settings import NLL_PENALTY
from core.exceptions import InvalidArgumentError
from core.models import ForecastOutput, ParametricForecast, PointForecast, QuantileForecast
from distributions import get_family

logger = get_logger(__name__)

LossGrad = Union[np.ndarray, Dict[str, np.ndarray]]


def _check_same_shape(y: np.ndarray, y_hat: np.ndarray, name: str) -> None:
    if y.shape != y_hat.shape:
        raise InvalidArgumentError(f"{name}: target shape {y.shape} != prediction shape {y_hat.shape}")


def _quantile_levels(quantiles: Sequence[float]) -> np.ndarray:
    q = np.asarray(quantiles, dtype=float).reshape(-1)
    if q.size == 0 or np.any(~((q > 0.0) & (q < 1.0))):
        raise InvalidArgumentError(f"Quantile levels must lie in (0, 1), got {q.tolist()}")
    return q


# ========================================================
# Mean squared error
# ========================================================

def mse(y, y_hat) -> float:
    y, y_hat = np.asarray(y, dtype=float), np.asarray(y_hat, dtype=float)
    _check_same_shape(y, y_hat, "mse")
    return float(np.mean((y_hat - y) ** 2))


def mse_grad(y, y_hat) -> np.ndarray:
    y, y_hat = np.asarray(y, dtype=float), np.asarray(y_hat, dtype=float)
    _check_same_shape(y, y_hat, "mse")
    return 2.0 * (y_hat - y) / y.size


# ========================================================
# Pinball (quantile) loss
# ========================================================

def pinball_terms(y, y_hat, quantiles: Sequence[float]) -> np.ndarray:
    """
    Elementwise rho_q(y - y_hat_q), shape B x P x |Q|

    Args:
        y: Targets, B x P
        y_hat: Quantile predictions, B x P x |Q|
        quantiles: Levels matching the last axis of y_hat
    """
    q = _quantile_levels(quantiles)
    y, y_hat = np.asarray(y, dtype=float), np.asarray(y_hat, dtype=float)
    if y_hat.shape != y.shape + (q.size,):
        raise InvalidArgumentError(
            f"pinball: prediction shape {y_hat.shape} != target shape {y.shape} + ({q.size},)"
        )
    u = y[..., None] - y_hat
    return np.where(u >= 0.0, q * u, (q - 1.0) * u)


def pinball(y, y_hat, quantiles: Sequence[float]) -> float:
    return float(np.mean(pinball_terms(y, y_hat, quantiles)))


def pinball_grad(y, y_hat, quantiles: Sequence[float]) -> np.ndarray:
    q = _quantile_levels(quantiles)
    y, y_hat = np.asarray(y, dtype=float), np.asarray(y_hat, dtype=float)
    u = y[..., None] - y_hat
    slope = np.where(u >= 0.0, -q, 1.0 - q)
    return slope / y_hat.size


# ========================================================
# Negative log-likelihood
# ========================================================

def nll_terms(y, params: Mapping[str, np.ndarray], family: str) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-entry negative log-likelihood with the out-of-support penalty applied

    Returns:
        (terms, valid mask); invalid entries carry NLL_PENALTY
    """
    fam = get_family(family)
    y = np.asarray(y, dtype=float)
    for name in fam.param_names:
        if name not in params:
            raise InvalidArgumentError(f"nll: family '{family}' needs parameter '{name}'")
        if np.shape(params[name]) != y.shape:
            raise InvalidArgumentError(
                f"nll: parameter '{name}' shape {np.shape(params[name])} != target shape {y.shape}"
            )
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        logp = fam.logpdf(y, params)
    valid = np.isfinite(logp)
    return np.where(valid, -logp, NLL_PENALTY), valid


def nll(y, params: Mapping[str, np.ndarray], family: str) -> float:
    terms, valid = nll_terms(y, params, family)
    if not valid.all():
        logger.debug(f"nll: {int((~valid).sum())} of {valid.size} targets outside the {family} support")
    return float(np.mean(terms))


def nll_grad(y, params: Mapping[str, np.ndarray], family: str) -> Dict[str, np.ndarray]:
    """Gradient of the mean NLL w.r.t. each head parameter; penalised entries get zero"""
    fam = get_family(family)
    y = np.asarray(y, dtype=float)
    _, valid = nll_terms(y, params, family)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        grads = fam.logpdf_grad(y, params)
    return {name: np.where(valid, -g, 0.0) / y.size for name, g in grads.items()}


# ========================================================
# Dispatch on forecast kind
# ========================================================

def compute_objective(output: ForecastOutput, y) -> Tuple[float, LossGrad]:
    """
    Training loss of a forecast and its gradient w.r.t. the forecast

    Point forecasts use MSE, quantile grids the pinball loss and
    distribution parameters the NLL of their family.
    """
    if isinstance(output, PointForecast):
        return mse(y, output.values), mse_grad(y, output.values)
    if isinstance(output, QuantileForecast):
        return (
            pinball(y, output.values, output.levels),
            pinball_grad(y, output.values, output.levels),
        )
    if isinstance(output, ParametricForecast):
        return nll(y, output.params, output.family), nll_grad(y, output.params, output.family)
    raise InvalidArgumentError(f"Unsupported forecast type {type(output).__name__}")


def objective_value(output: ForecastOutput, y) -> float:
    """Loss only, for validation"""
    if isinstance(output, PointForecast):
        return mse(y, output.values)
    if isinstance(output, QuantileForecast):
        return pinball(y, output.values, output.levels)
    if isinstance(output, ParametricForecast):
        return nll(y, output.params, output.family)
    raise InvalidArgumentError(f"Unsupported forecast type {type(output).__name__}")
