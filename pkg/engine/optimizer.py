"""
Adam optimizer over named parameter dicts
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from core.exceptions import TrainingError


@dataclass
class AdamState:
    """Moment accumulators and step count"""
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    def ensure(self, params: Dict[str, np.ndarray]) -> None:
        for name, value in params.items():
            if name not in self.m:
                self.m[name] = np.zeros_like(value)
                self.v[name] = np.zeros_like(value)

    def copy(self) -> "AdamState":
        return AdamState(
            m={k: v.copy() for k, v in self.m.items()},
            v={k: v.copy() for k, v in self.v.items()},
            t=self.t,
            beta1=self.beta1,
            beta2=self.beta2,
            epsilon=self.epsilon,
        )


def global_norm(grads: Dict[str, np.ndarray]) -> float:
    return float(np.sqrt(sum(float(np.sum(g * g)) for g in grads.values())))


def check_finite(grads: Dict[str, np.ndarray]) -> None:
    """
    Raises:
        TrainingError: naming the first parameter block with a non-finite gradient
    """
    for name, g in grads.items():
        if not np.all(np.isfinite(g)):
            raise TrainingError(f"Non-finite gradient in parameter block '{name}'", block=name)


def clip_by_global_norm(grads: Dict[str, np.ndarray], max_norm: Optional[float]) -> float:
    """Rescale gradients in place so their global norm is at most max_norm; returns the pre-clip norm"""
    norm = global_norm(grads)
    if max_norm is not None and max_norm > 0 and norm > max_norm:
        scale = max_norm / norm
        for g in grads.values():
            g *= scale
    return norm


class Adam:
    """
    Adam with bias correction

    Parameters are updated in place.
    """

    def __init__(self, lr: float = 1e-3, beta1: float = 0.9, beta2: float = 0.999,
                 epsilon: float = 1e-8, state: Optional[AdamState] = None):
        self.lr = float(lr)
        self.state = state or AdamState(beta1=beta1, beta2=beta2, epsilon=epsilon)

    def step(self, params: Dict[str, np.ndarray], grads: Dict[str, np.ndarray]) -> None:
        check_finite(grads)
        st = self.state
        st.ensure(params)
        st.t += 1

        bc1 = 1.0 - st.beta1 ** st.t
        bc2 = 1.0 - st.beta2 ** st.t
        step_size = self.lr / bc1

        for name, p in params.items():
            g = grads[name]
            m, v = st.m[name], st.v[name]
            m *= st.beta1
            m += (1.0 - st.beta1) * g
            v *= st.beta2
            v += (1.0 - st.beta2) * (g * g)
            p -= step_size * m / (np.sqrt(v / bc2) + st.epsilon)


def adam_step(params: Dict[str, np.ndarray], grads: Dict[str, np.ndarray],
              state: AdamState, lr: float) -> AdamState:
    """Functional form: updates params in place and returns the advanced state"""
    Adam(lr=lr, state=state).step(params, grads)
    return state
