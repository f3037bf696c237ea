"""
Output heads with clear-sky injection

A linear map H -> P x K produces raw values; the head kind turns them into
a point forecast, a quantile grid or constrained distribution parameters
and adds the scaled future clear sky:

    det         y = raw + alpha * cs
    qr          alpha * cs added to the 0.5-quantile channel
    mle-g       mu = raw + alpha * cs, sigma > 0
    mle-jsu     xi = raw + alpha * cs, lam > 0, gamma in (-4, 4), delta in (5, 9)
    mle-jsb     gamma = constrained + (1 - cs) * 4 clamped into (-4, 4), delta in (0.05, 6)
    mle-w       phi in (0, 1), omega = constrained + alpha * cs (floored)
"""

from typing import Dict, Optional, Sequence

import numpy as np

from core.exceptions import ConfigurationError, InvalidArgumentError
from core.models import (
    ForecastOutput,
    HeadKind,
    ParametricForecast,
    PointForecast,
    QuantileForecast,
)
from distributions import constrain, constrain_derivative, get_family
from .layers import Layer, Linear

# Parameter that receives alpha * cs for each family
INJECTION_TARGETS = {
    "gaussian": "mu",
    "johnson_su": "xi",
    "weibull": "omega",
}

JSB_SHIFT_SCALE = 4.0
JSB_GAMMA_MARGIN = 1e-3
WEIBULL_OMEGA_FLOOR = 1e-3
ALPHA_INIT = 1.0


class OutputHead(Layer):
    """
    Linear projection of the final hidden state plus clear-sky injection

    Args:
        hidden_size: Width H of the incoming state
        horizon: Forecast steps P
        kind: Head kind
        quantiles: Quantile set (quantile head only)
        sort_quantiles: Sort each step's quantiles after injection
        inject: Add the clear-sky term (disabled for the plain MLP baseline)
        rng: Initialisation generator
    """

    def __init__(
        self,
        hidden_size: int,
        horizon: int,
        kind: HeadKind,
        quantiles: Sequence[float] = (),
        sort_quantiles: bool = False,
        inject: bool = True,
        rng: Optional[np.random.Generator] = None,
    ):
        super().__init__()
        self.kind = HeadKind(kind)
        self.horizon = int(horizon)
        self.quantiles = tuple(float(q) for q in quantiles)
        self.sort_quantiles = bool(sort_quantiles)
        self.inject = bool(inject)
        self.family = self.kind.family
        self.width = self.kind.output_width(len(self.quantiles))
        if self.width <= 0:
            raise InvalidArgumentError(f"Head {self.kind.value} needs a non-empty quantile set")
        self._median = None
        if self.kind is HeadKind.QUANTILE:
            self._median = next((k for k, q in enumerate(self.quantiles) if abs(q - 0.5) < 1e-12), None)
            if self._median is None and self.inject:
                raise ConfigurationError(
                    f"Quantile set {list(self.quantiles)} must contain 0.5 for clear-sky injection"
                )

        self.linear = Linear(hidden_size, self.horizon * self.width, rng)
        self.params = {"W": self.linear.params["W"], "b": self.linear.params["b"]}
        # Johnson's SB takes its fixed gamma shift instead of alpha * cs
        self.uses_alpha = self.inject and (self.family is None or self.family in INJECTION_TARGETS)
        if self.uses_alpha:
            self.params["alpha"] = np.array([ALPHA_INIT])
        self.zero_grad()

    def zero_grad(self) -> None:
        for name, value in self.params.items():
            self.grads[name] = np.zeros_like(value)
        self.linear.grads = {k: self.grads[k] for k in ("W", "b")}

    @property
    def alpha(self) -> float:
        return float(self.params["alpha"][0]) if self.uses_alpha else 0.0

    def _check_clear_sky(self, hidden: np.ndarray, clear_sky: np.ndarray) -> np.ndarray:
        cs = np.asarray(clear_sky, dtype=float)
        if cs.shape != (hidden.shape[0], self.horizon):
            raise InvalidArgumentError(
                f"future_clear_sky must be B x P = {(hidden.shape[0], self.horizon)}, got {cs.shape}"
            )
        return cs

    def forward(self, hidden: np.ndarray, clear_sky: np.ndarray) -> ForecastOutput:
        cs = self._check_clear_sky(hidden, clear_sky)
        raw = self.linear.forward(hidden).reshape(hidden.shape[0], self.horizon, self.width)
        alpha = self.alpha

        if self.kind is HeadKind.DETERMINISTIC:
            self._cache = {"cs": cs}
            return PointForecast(raw[..., 0] + alpha * cs)

        if self.kind is HeadKind.QUANTILE:
            values = raw.copy()
            if self._median is not None and self.uses_alpha:
                values[..., self._median] += alpha * cs
            order = None
            if self.sort_quantiles:
                order = np.argsort(values, axis=-1, kind="stable")
                values = np.take_along_axis(values, order, axis=-1)
            self._cache = {"cs": cs, "order": order}
            return QuantileForecast(values, self.quantiles)

        family = get_family(self.family)
        params: Dict[str, np.ndarray] = {}
        masks: Dict[str, np.ndarray] = {}
        for k, (name, bounds) in enumerate(zip(family.param_names, family.head_bounds)):
            params[name] = constrain(raw[..., k], bounds)

        if self.family == "johnson_sb":
            shifted = params["gamma"] + JSB_SHIFT_SCALE * (1.0 - cs)
            lo = family.head_bounds[0].lower + JSB_GAMMA_MARGIN
            hi = family.head_bounds[0].upper - JSB_GAMMA_MARGIN
            masks["gamma"] = (shifted > lo) & (shifted < hi)
            params["gamma"] = np.clip(shifted, lo, hi)
        elif self.uses_alpha:
            target = INJECTION_TARGETS[self.family]
            params[target] = params[target] + alpha * cs
            if self.family == "weibull":
                masks["omega"] = params["omega"] > WEIBULL_OMEGA_FLOOR
                params["omega"] = np.maximum(params["omega"], WEIBULL_OMEGA_FLOOR)

        self._cache = {"cs": cs, "raw": raw, "masks": masks}
        return ParametricForecast(params, self.family)

    def backward(self, grad) -> np.ndarray:
        """
        Args:
            grad: dL/d(forecast): B x P, B x P x |Q| or a name -> B x P dict

        Returns:
            dL/d(hidden), B x H
        """
        cache = self._require_cache()
        cs = cache["cs"]

        if self.kind is HeadKind.DETERMINISTIC:
            g = np.asarray(grad, dtype=float)
            if self.uses_alpha:
                self.grads["alpha"] += np.sum(g * cs)
            draw = g[..., None]

        elif self.kind is HeadKind.QUANTILE:
            g = np.asarray(grad, dtype=float)
            order = cache["order"]
            if order is not None:
                unsorted = np.empty_like(g)
                np.put_along_axis(unsorted, order, g, axis=-1)
                g = unsorted
            if self._median is not None and self.uses_alpha:
                self.grads["alpha"] += np.sum(g[..., self._median] * cs)
            draw = g

        else:
            family = get_family(self.family)
            raw, masks = cache["raw"], cache["masks"]
            draw = np.zeros_like(raw)
            for k, (name, bounds) in enumerate(zip(family.param_names, family.head_bounds)):
                g = np.asarray(grad[name], dtype=float)
                if name in masks:
                    g = np.where(masks[name], g, 0.0)
                if self.uses_alpha and INJECTION_TARGETS.get(self.family) == name:
                    self.grads["alpha"] += np.sum(g * cs)
                draw[..., k] = g * constrain_derivative(raw[..., k], bounds)

        d_linear = draw.reshape(draw.shape[0], self.horizon * self.width)
        return self.linear.backward(d_linear)

    def clear_cache(self) -> None:
        super().clear_cache()
        self.linear.clear_cache()

