"""
Central finite-difference gradient checking
"""

from typing import Callable, Dict

import numpy as np

from config.logging import get_logger
from losses import compute_objective, objective_value
from .model import Network

logger = get_logger(__name__)


def relative_error(analytic, numeric, floor: float = 1e-6) -> np.ndarray:
    a = np.asarray(analytic, dtype=float)
    n = np.asarray(numeric, dtype=float)
    return np.abs(a - n) / np.maximum(np.maximum(np.abs(a), np.abs(n)), floor)


def numeric_gradient(fn: Callable[[], float], array: np.ndarray, step: float = 1e-5) -> np.ndarray:
    """Central differences of fn() w.r.t. every entry of `array` (perturbed in place)"""
    grad = np.zeros_like(array)
    flat = array.reshape(-1)
    out = grad.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + step
        plus = fn()
        flat[i] = orig - step
        minus = fn()
        flat[i] = orig
        out[i] = (plus - minus) / (2.0 * step)
    return grad


def gradient_check(network: Network, inputs: np.ndarray, future_clear_sky: np.ndarray,
                   targets: np.ndarray, step: float = 1e-5) -> Dict[str, float]:
    """
    Compare backprop gradients of the training loss with central differences

    Returns:
        Parameter name -> maximum relative error over its entries
    """
    network.zero_grad()
    output = network.forward(inputs, future_clear_sky)
    _, grad = compute_objective(output, targets)
    network.backward(grad)
    analytic = {k: v.copy() for k, v in network.gradients().items()}

    def loss() -> float:
        out = network.forward(inputs, future_clear_sky)
        return objective_value(out, targets)

    errors: Dict[str, float] = {}
    for name, param in network.parameters().items():
        numeric = numeric_gradient(loss, param, step)
        errors[name] = float(np.max(relative_error(analytic[name], numeric))) if param.size else 0.0
    network.clear_cache()
    worst = max(errors, key=errors.get)
    logger.debug(f"Gradient check: worst block {worst} with relative error {errors[worst]:.3e}")
    return errors
