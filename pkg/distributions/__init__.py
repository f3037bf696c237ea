"""
Probability distributions for the maximum-likelihood heads
"""

from .bounds import ParamBounds, UNBOUNDED, POSITIVE, constrain, constrain_derivative
from .gaussian import (
    GaussianParams,
    standard_normal_quantile,
    gaussian_logpdf,
    gaussian_logpdf_grad,
    gaussian_cdf,
    gaussian_quantile,
)
from .johnson import (
    JohnsonSUParams,
    JohnsonSBParams,
    johnson_su_logpdf,
    johnson_su_logpdf_grad,
    johnson_su_cdf,
    johnson_su_quantile,
    johnson_sb_logpdf,
    johnson_sb_logpdf_grad,
    johnson_sb_cdf,
    johnson_sb_quantile,
)
from .weibull import (
    WeibullParams,
    weibull_logpdf,
    weibull_logpdf_grad,
    weibull_cdf,
    weibull_quantile,
)
from .families import DistributionFamily, FAMILIES, JSB_DELTA_MIN, get_family

__all__ = [
    "ParamBounds",
    "UNBOUNDED",
    "POSITIVE",
    "constrain",
    "constrain_derivative",
    "GaussianParams",
    "standard_normal_quantile",
    "gaussian_logpdf",
    "gaussian_logpdf_grad",
    "gaussian_cdf",
    "gaussian_quantile",
    "JohnsonSUParams",
    "JohnsonSBParams",
    "johnson_su_logpdf",
    "johnson_su_logpdf_grad",
    "johnson_su_cdf",
    "johnson_su_quantile",
    "johnson_sb_logpdf",
    "johnson_sb_logpdf_grad",
    "johnson_sb_cdf",
    "johnson_sb_quantile",
    "WeibullParams",
    "weibull_logpdf",
    "weibull_logpdf_grad",
    "weibull_cdf",
    "weibull_quantile",
    "DistributionFamily",
    "FAMILIES",
    "JSB_DELTA_MIN",
    "get_family",
]
