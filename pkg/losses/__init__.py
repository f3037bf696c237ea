"""
Training objectives
"""

from .objectives import (
    mse,
    mse_grad,
    pinball_terms,
    pinball,
    pinball_grad,
    nll_terms,
    nll,
    nll_grad,
    compute_objective,
    objective_value,
)

__all__ = [
    "mse",
    "mse_grad",
    "pinball_terms",
    "pinball",
    "pinball_grad",
    "nll_terms",
    "nll",
    "nll_grad",
    "compute_objective",
    "objective_value",
]
