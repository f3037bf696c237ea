"""
Registry of the distribution families used by the MLE heads
"""

from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Tuple

import numpy as np

from core.exceptions import InvalidArgumentError
from .bounds import ParamBounds, UNBOUNDED, POSITIVE
from .gaussian import (
    GaussianParams,
    gaussian_cdf,
    gaussian_logpdf,
    gaussian_logpdf_grad,
    gaussian_quantile,
)
from .johnson import (
    JohnsonSBParams,
    JohnsonSUParams,
    johnson_sb_cdf,
    johnson_sb_logpdf,
    johnson_sb_logpdf_grad,
    johnson_sb_quantile,
    johnson_su_cdf,
    johnson_su_logpdf,
    johnson_su_logpdf_grad,
    johnson_su_quantile,
)
from .weibull import (
    WeibullParams,
    weibull_cdf,
    weibull_logpdf,
    weibull_logpdf_grad,
    weibull_quantile,
)

# Johnson's SB delta stays away from zero so the density is defined
JSB_DELTA_MIN = 0.05


@dataclass(frozen=True)
class DistributionFamily:
    """
    One family: the parameters a head emits, their intervals and the
    density functions
    """
    name: str
    param_names: Tuple[str, ...]
    head_bounds: Tuple[ParamBounds, ...]
    params_type: type
    logpdf_fn: Callable
    logpdf_grad_fn: Callable
    cdf_fn: Callable
    quantile_fn: Callable
    # support in scaled target units
    support: Tuple[float, float] = (-np.inf, np.inf)

    @property
    def width(self) -> int:
        return len(self.param_names)

    def make_params(self, values: Mapping[str, np.ndarray]):
        """Build the parameter object from a name -> array mapping"""
        missing = [n for n in self.param_names if n not in values]
        if missing:
            raise InvalidArgumentError(f"{self.name} parameters missing: {missing}")
        return self.params_type(**{n: values[n] for n in self.param_names})

    def logpdf(self, x, values: Mapping[str, np.ndarray]):
        return self.logpdf_fn(x, self.make_params(values))

    def logpdf_grad(self, x, values: Mapping[str, np.ndarray]) -> Dict[str, np.ndarray]:
        """Gradients for the head parameters only"""
        grads = self.logpdf_grad_fn(x, self.make_params(values))
        return {n: grads[n] for n in self.param_names}

    def cdf(self, x, values: Mapping[str, np.ndarray]):
        return self.cdf_fn(x, self.make_params(values))

    def quantile(self, p, values: Mapping[str, np.ndarray]):
        return self.quantile_fn(p, self.make_params(values))


FAMILIES: Dict[str, DistributionFamily] = {
    "gaussian": DistributionFamily(
        name="gaussian",
        param_names=("mu", "sigma"),
        head_bounds=(UNBOUNDED, POSITIVE),
        params_type=GaussianParams,
        logpdf_fn=gaussian_logpdf,
        logpdf_grad_fn=gaussian_logpdf_grad,
        cdf_fn=gaussian_cdf,
        quantile_fn=gaussian_quantile,
    ),
    "johnson_su": DistributionFamily(
        name="johnson_su",
        param_names=("xi", "lam", "gamma", "delta"),
        head_bounds=(UNBOUNDED, POSITIVE, ParamBounds(-4.0, 4.0), ParamBounds(5.0, 9.0)),
        params_type=JohnsonSUParams,
        logpdf_fn=johnson_su_logpdf,
        logpdf_grad_fn=johnson_su_logpdf_grad,
        cdf_fn=johnson_su_cdf,
        quantile_fn=johnson_su_quantile,
    ),
    "johnson_sb": DistributionFamily(
        name="johnson_sb",
        param_names=("gamma", "delta"),
        head_bounds=(ParamBounds(-4.0, 4.0), ParamBounds(JSB_DELTA_MIN, 6.0)),
        params_type=JohnsonSBParams,
        logpdf_fn=johnson_sb_logpdf,
        logpdf_grad_fn=johnson_sb_logpdf_grad,
        cdf_fn=johnson_sb_cdf,
        quantile_fn=johnson_sb_quantile,
        support=(0.0, 1.0),
    ),
    "weibull": DistributionFamily(
        name="weibull",
        param_names=("phi", "omega"),
        head_bounds=(ParamBounds(0.0, 1.0), ParamBounds(0.0, 2.0)),
        params_type=WeibullParams,
        logpdf_fn=weibull_logpdf,
        logpdf_grad_fn=weibull_logpdf_grad,
        cdf_fn=weibull_cdf,
        quantile_fn=weibull_quantile,
        support=(0.0, np.inf),
    ),
}


def get_family(name: str) -> DistributionFamily:
    """
    Look up a family by name

    Raises:
        InvalidArgumentError: for an unknown name
    """
    try:
        return FAMILIES[name]
    except KeyError:
        raise InvalidArgumentError(f"Unknown distribution family '{name}'; known: {sorted(FAMILIES)}")
