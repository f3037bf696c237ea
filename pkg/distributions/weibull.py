"""
Two-parameter Weibull distribution (scale phi, shape omega)
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from core.exceptions import InvalidParameterError
from .gaussian import check_probability


@dataclass(frozen=True, eq=False)
class WeibullParams:
    """Scale phi (> 0) and shape omega (> 0)"""
    phi: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        if np.any(~(np.asarray(self.phi, dtype=float) > 0.0)):
            raise InvalidParameterError("Weibull phi must be positive")
        if np.any(~(np.asarray(self.omega, dtype=float) > 0.0)):
            raise InvalidParameterError("Weibull omega must be positive")


def _prepare(x, params: WeibullParams):
    x = np.asarray(x, dtype=float)
    phi = np.asarray(params.phi, dtype=float)
    omega = np.asarray(params.omega, dtype=float)
    positive = x > 0.0
    safe_x = np.where(positive, x, phi)
    log_ratio = np.log(safe_x) - np.log(phi)
    return positive, phi, omega, log_ratio


def weibull_logpdf(x, params: WeibullParams):
    """Log-density; -inf for x <= 0"""
    positive, phi, omega, log_ratio = _prepare(x, params)
    power = np.exp(omega * log_ratio)
    value = np.log(omega) - np.log(phi) + (omega - 1.0) * log_ratio - power
    return np.where(positive, value, -np.inf)


def weibull_logpdf_grad(x, params: WeibullParams) -> Dict[str, np.ndarray]:
    """Partial derivatives w.r.t. phi and omega; zero for x <= 0"""
    positive, phi, omega, log_ratio = _prepare(x, params)
    power = np.exp(omega * log_ratio)
    grads = {
        "phi": (omega / phi) * (power - 1.0),
        "omega": 1.0 / omega + log_ratio - power * log_ratio,
    }
    return {k: np.where(positive, v, 0.0) for k, v in grads.items()}


def weibull_cdf(x, params: WeibullParams):
    positive, _, omega, log_ratio = _prepare(x, params)
    return np.where(positive, -np.expm1(-np.exp(omega * log_ratio)), 0.0)


def weibull_quantile(p, params: WeibullParams):
    p = check_probability(p)
    phi = np.asarray(params.phi, dtype=float)
    omega = np.asarray(params.omega, dtype=float)
    return phi * np.power(-np.log1p(-p), 1.0 / omega)
