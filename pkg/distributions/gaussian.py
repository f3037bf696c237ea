"""
Gaussian distribution
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np
from scipy.special import ndtr, ndtri

from core.exceptions import InvalidArgumentError, InvalidParameterError

LOG_2PI = float(np.log(2.0 * np.pi))


@dataclass(frozen=True, eq=False)
class GaussianParams:
    """Mean mu and standard deviation sigma (> 0)"""
    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        if np.any(~(np.asarray(self.sigma, dtype=float) > 0.0)):
            raise InvalidParameterError("Gaussian sigma must be positive")


def check_probability(p) -> np.ndarray:
    """
    Probabilities for quantile functions

    Raises:
        InvalidArgumentError: if any p is outside (0, 1)
    """
    arr = np.asarray(p, dtype=float)
    if np.any(~((arr > 0.0) & (arr < 1.0))):
        raise InvalidArgumentError("Quantile probability must lie in (0, 1)")
    return arr


def standard_normal_quantile(p):
    """Inverse of the standard normal CDF"""
    return ndtri(check_probability(p))


def gaussian_logpdf(x, params: GaussianParams):
    x = np.asarray(x, dtype=float)
    mu = np.asarray(params.mu, dtype=float)
    sigma = np.asarray(params.sigma, dtype=float)
    z = (x - mu) / sigma
    return -0.5 * LOG_2PI - np.log(sigma) - 0.5 * z * z


def gaussian_logpdf_grad(x, params: GaussianParams) -> Dict[str, np.ndarray]:
    """Partial derivatives of the log-density w.r.t. mu and sigma"""
    x = np.asarray(x, dtype=float)
    mu = np.asarray(params.mu, dtype=float)
    sigma = np.asarray(params.sigma, dtype=float)
    r = x - mu
    return {
        "mu": r / sigma ** 2,
        "sigma": -1.0 / sigma + r * r / sigma ** 3,
    }


def gaussian_cdf(x, params: GaussianParams):
    x = np.asarray(x, dtype=float)
    return ndtr((x - np.asarray(params.mu, dtype=float)) / np.asarray(params.sigma, dtype=float))


def gaussian_quantile(p, params: GaussianParams):
    return np.asarray(params.mu, dtype=float) + np.asarray(params.sigma, dtype=float) * standard_normal_quantile(p)
