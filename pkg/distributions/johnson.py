"""
Johnson's SU (unbounded) and SB (bounded) distributions

Both transform a standard normal variate Z:
    SU: X = xi + lam * sinh((Z - gamma) / delta)
    SB: X = xi + lam * logistic((Z - gamma) / delta)
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np
from scipy.special import expit, logit, ndtr

from core.exceptions import InvalidParameterError
from .gaussian import LOG_2PI, standard_normal_quantile


def _check_positive(name: str, value) -> None:
    if np.any(~(np.asarray(value, dtype=float) > 0.0)):
        raise InvalidParameterError(f"Johnson {name} must be positive")


@dataclass(frozen=True, eq=False)
class JohnsonSUParams:
    """Location xi, scale lam (> 0), skew gamma, shape delta (> 0)"""
    xi: np.ndarray
    lam: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        _check_positive("lambda", self.lam)
        _check_positive("delta", self.delta)


@dataclass(frozen=True, eq=False)
class JohnsonSBParams:
    """
    Skew gamma and shape delta (> 0) on the support (xi, xi + lam)

    The forecasting head keeps xi = 0 and lam = 1.
    """
    gamma: np.ndarray
    delta: np.ndarray
    xi: np.ndarray = 0.0
    lam: np.ndarray = 1.0

    def __post_init__(self):
        _check_positive("lambda", self.lam)
        _check_positive("delta", self.delta)


def _as_float(*values):
    return [np.asarray(v, dtype=float) for v in values]


# ========================================================
# Johnson's SU
# ========================================================

def johnson_su_logpdf(x, params: JohnsonSUParams):
    x, xi, lam, gamma, delta = _as_float(x, params.xi, params.lam, params.gamma, params.delta)
    z = (x - xi) / lam
    w = gamma + delta * np.arcsinh(z)
    return np.log(delta) - np.log(lam) - 0.5 * LOG_2PI - 0.5 * np.log1p(z * z) - 0.5 * w * w


def johnson_su_logpdf_grad(x, params: JohnsonSUParams) -> Dict[str, np.ndarray]:
    """Partial derivatives of the log-density w.r.t. xi, lam, gamma, delta"""
    x, xi, lam, gamma, delta = _as_float(x, params.xi, params.lam, params.gamma, params.delta)
    z = (x - xi) / lam
    root = np.sqrt(1.0 + z * z)
    asinh_z = np.arcsinh(z)
    w = gamma + delta * asinh_z
    dl_dz = -z / (1.0 + z * z) - w * delta / root
    return {
        "xi": -dl_dz / lam,
        "lam": -1.0 / lam - dl_dz * z / lam,
        "gamma": -w,
        "delta": 1.0 / delta - w * asinh_z,
    }


def johnson_su_cdf(x, params: JohnsonSUParams):
    x, xi, lam, gamma, delta = _as_float(x, params.xi, params.lam, params.gamma, params.delta)
    return ndtr(gamma + delta * np.arcsinh((x - xi) / lam))


def johnson_su_quantile(p, params: JohnsonSUParams):
    xi, lam, gamma, delta = _as_float(params.xi, params.lam, params.gamma, params.delta)
    z_p = standard_normal_quantile(p)
    return xi + lam * np.sinh((z_p - gamma) / delta)


# ========================================================
# Johnson's SB
# ========================================================

def _sb_support(x, xi, lam):
    return (x > xi) & (x < xi + lam)


def johnson_sb_logpdf(x, params: JohnsonSBParams):
    """Log-density; -inf outside the open support (xi, xi + lam)"""
    x, xi, lam, gamma, delta = _as_float(x, params.xi, params.lam, params.gamma, params.delta)
    inside = _sb_support(x, xi, lam)
    lo = np.where(inside, x - xi, 0.5 * lam)
    hi = np.where(inside, xi + lam - x, 0.5 * lam)
    w = gamma + delta * (np.log(lo) - np.log(hi))
    value = np.log(delta) + np.log(lam) - 0.5 * LOG_2PI - np.log(lo) - np.log(hi) - 0.5 * w * w
    return np.where(inside, value, -np.inf)


def johnson_sb_logpdf_grad(x, params: JohnsonSBParams) -> Dict[str, np.ndarray]:
    """Partial derivatives w.r.t. gamma, delta, xi, lam; zero outside the support"""
    x, xi, lam, gamma, delta = _as_float(x, params.xi, params.lam, params.gamma, params.delta)
    inside = _sb_support(x, xi, lam)
    lo = np.where(inside, x - xi, 0.5 * lam)
    hi = np.where(inside, xi + lam - x, 0.5 * lam)
    log_ratio = np.log(lo) - np.log(hi)
    w = gamma + delta * log_ratio
    grads = {
        "gamma": -w,
        "delta": 1.0 / delta - w * log_ratio,
        "xi": 1.0 / lo - 1.0 / hi + w * delta * (1.0 / lo + 1.0 / hi),
        "lam": 1.0 / lam - 1.0 / hi + w * delta / hi,
    }
    return {k: np.where(inside, v, 0.0) for k, v in grads.items()}


def johnson_sb_cdf(x, params: JohnsonSBParams):
    x, xi, lam, gamma, delta = _as_float(x, params.xi, params.lam, params.gamma, params.delta)
    inside = _sb_support(x, xi, lam)
    u = np.where(inside, (x - xi) / lam, 0.5)
    inner = ndtr(gamma + delta * logit(u))
    return np.where(inside, inner, np.where(x >= xi + lam, 1.0, 0.0))


def johnson_sb_quantile(p, params: JohnsonSBParams):
    xi, lam, gamma, delta = _as_float(params.xi, params.lam, params.gamma, params.delta)
    z_p = standard_normal_quantile(p)
    return xi + lam * expit((z_p - gamma) / delta)
