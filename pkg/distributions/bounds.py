"""
Constrained-parameter mappings for distribution heads
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import expit

from core.exceptions import InvalidArgumentError

# Added after softplus so positive parameters never reach zero
POSITIVE_EPSILON = 1e-4


@dataclass(frozen=True)
class ParamBounds:
    """
    Interval for a constrained parameter

    Both bounds set: open interval (lower, upper), logistic mapping.
    Only lower set: (lower, inf), softplus mapping.
    Neither set: identity.
    """
    lower: Optional[float] = None
    upper: Optional[float] = None

    def __post_init__(self):
        if self.upper is not None and self.lower is None:
            raise InvalidArgumentError("Upper-only bounds are not supported")
        if self.upper is not None and not self.upper > self.lower:
            raise InvalidArgumentError(f"Upper bound {self.upper} must exceed lower bound {self.lower}")

    @property
    def is_bounded(self) -> bool:
        return self.lower is not None and self.upper is not None

    @property
    def is_positive(self) -> bool:
        return self.lower is not None and self.upper is None

    @property
    def is_identity(self) -> bool:
        return self.lower is None and self.upper is None

    def contains(self, value) -> bool:
        v = np.asarray(value, dtype=float)
        ok = np.ones(v.shape, dtype=bool)
        if self.lower is not None:
            ok &= v > self.lower
        if self.upper is not None:
            ok &= v < self.upper
        return bool(np.all(ok))

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper}


UNBOUNDED = ParamBounds()
POSITIVE = ParamBounds(lower=0.0)


def constrain(raw, bounds: ParamBounds):
    """
    Map an unbounded raw value into the bounds

    bounded: a + (b - a) * logistic(raw); positive: a + softplus(raw) + 1e-4;
    unbounded: identity
    """
    x = np.asarray(raw, dtype=float)
    if bounds.is_bounded:
        out = bounds.lower + (bounds.upper - bounds.lower) * expit(x)
    elif bounds.is_positive:
        out = bounds.lower + np.logaddexp(0.0, x) + POSITIVE_EPSILON
    else:
        out = x.copy()
    if np.ndim(raw) == 0:
        return float(out)
    return out


def constrain_derivative(raw, bounds: ParamBounds):
    """d constrain / d raw"""
    x = np.asarray(raw, dtype=float)
    if bounds.is_bounded:
        s = expit(x)
        out = (bounds.upper - bounds.lower) * s * (1.0 - s)
    elif bounds.is_positive:
        out = expit(x)
    else:
        out = np.ones_like(x)
    if np.ndim(raw) == 0:
        return float(out)
    return out
