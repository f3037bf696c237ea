"""
Neural network layers with explicit forward/backward passes

Each layer owns `params` and `grads` dicts with matching keys. forward()
caches what backward() needs; backward() accumulates parameter gradients
and returns the gradient with respect to the layer input.
"""

from typing import Dict, List, Optional

import numpy as np
from scipy.special import expit

from core.exceptions import InvalidArgumentError, ModelStateError


class Layer:
    """Base class for trainable layers"""

    def __init__(self):
        self.params: Dict[str, np.ndarray] = {}
        self.grads: Dict[str, np.ndarray] = {}
        self._cache = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def backward(self, grad: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def zero_grad(self) -> None:
        for name, value in self.params.items():
            self.grads[name] = np.zeros_like(value)

    def _require_cache(self):
        if self._cache is None:
            raise ModelStateError(f"{type(self).__name__}.backward called without a recorded forward pass")
        return self._cache

    def clear_cache(self) -> None:
        self._cache = None


def uniform_init(rng: np.random.Generator, fan_in: int, shape) -> np.ndarray:
    """Uniform in +-1/sqrt(fan_in)"""
    bound = 1.0 / np.sqrt(fan_in)
    return rng.uniform(-bound, bound, size=shape)


class Linear(Layer):
    """Affine map x W + b on the last axis"""

    def __init__(self, n_in: int, n_out: int, rng: Optional[np.random.Generator] = None):
        super().__init__()
        self.n_in = int(n_in)
        self.n_out = int(n_out)
        rng = rng or np.random.default_rng(0)
        self.params["W"] = uniform_init(rng, self.n_in, (self.n_in, self.n_out))
        self.params["b"] = np.zeros(self.n_out)
        self.zero_grad()

    def forward(self, x: np.ndarray) -> np.ndarray:
        if x.shape[-1] != self.n_in:
            raise InvalidArgumentError(f"Linear expects input dim {self.n_in}, got {x.shape[-1]}")
        self._cache = x
        return x @ self.params["W"] + self.params["b"]

    def backward(self, grad: np.ndarray) -> np.ndarray:
        x = self._require_cache()
        x2 = x.reshape(-1, self.n_in)
        g2 = grad.reshape(-1, self.n_out)
        self.grads["W"] += x2.T @ g2
        self.grads["b"] += g2.sum(axis=0)
        return grad @ self.params["W"].T


class Tanh(Layer):
    """Elementwise tanh (no parameters)"""

    def forward(self, x: np.ndarray) -> np.ndarray:
        out = np.tanh(x)
        self._cache = out
        return out

    def backward(self, grad: np.ndarray) -> np.ndarray:
        out = self._require_cache()
        return grad * (1.0 - out * out)


class LSTMLayer(Layer):
    """
    Single LSTM layer over a B x T x D sequence

    Gate pre-activations a = x W_x + h W_h + b are laid out as
    [input | forget | output | candidate], each H wide.
    """

    def __init__(self, input_size: int, hidden_size: int, rng: Optional[np.random.Generator] = None):
        super().__init__()
        self.input_size = int(input_size)
        self.hidden_size = int(hidden_size)
        rng = rng or np.random.default_rng(0)
        H = self.hidden_size
        self.params["W_x"] = uniform_init(rng, self.input_size, (self.input_size, 4 * H))
        self.params["W_h"] = uniform_init(rng, H, (H, 4 * H))
        bias = np.zeros(4 * H)
        bias[H:2 * H] = 1.0  # forget gate
        self.params["b"] = bias
        self.zero_grad()

    def forward(self, x: np.ndarray) -> np.ndarray:
        """
        Run the recurrence from zero state

        Args:
            x: B x T x D input

        Returns:
            B x T x H hidden states
        """
        if x.ndim != 3 or x.shape[2] != self.input_size:
            raise InvalidArgumentError(
                f"LSTM expects input of shape B x T x {self.input_size}, got {x.shape}"
            )
        B, T, _ = x.shape
        H = self.hidden_size
        W_x, W_h, b = self.params["W_x"], self.params["W_h"], self.params["b"]

        h = np.zeros((B, H))
        c = np.zeros((B, H))
        hs = np.empty((B, T, H))
        steps = []
        x_proj = x @ W_x + b
        for t in range(T):
            a = x_proj[:, t] + h @ W_h
            i = expit(a[:, :H])
            f = expit(a[:, H:2 * H])
            o = expit(a[:, 2 * H:3 * H])
            g = np.tanh(a[:, 3 * H:])
            c_prev, h_prev = c, h
            c = f * c_prev + i * g
            tanh_c = np.tanh(c)
            h = o * tanh_c
            hs[:, t] = h
            steps.append((i, f, o, g, c_prev, h_prev, tanh_c))
        self._cache = (x, steps)
        return hs

    def backward(self, grad: np.ndarray) -> np.ndarray:
        """
        Backpropagation through time

        Args:
            grad: B x T x H gradient w.r.t. every hidden state

        Returns:
            B x T x D gradient w.r.t. the input
        """
        x, steps = self._require_cache()
        B, T, _ = x.shape
        H = self.hidden_size
        W_x, W_h = self.params["W_x"], self.params["W_h"]

        dx = np.empty_like(x)
        dh_next = np.zeros((B, H))
        dc_next = np.zeros((B, H))
        dW_x = np.zeros_like(W_x)
        dW_h = np.zeros_like(W_h)
        db = np.zeros(4 * H)
        for t in reversed(range(T)):
            i, f, o, g, c_prev, h_prev, tanh_c = steps[t]
            dh = grad[:, t] + dh_next
            do = dh * tanh_c
            dc = dc_next + dh * o * (1.0 - tanh_c * tanh_c)
            di = dc * g
            dg = dc * i
            df = dc * c_prev
            dc_next = dc * f
            da = np.concatenate([
                di * i * (1.0 - i),
                df * f * (1.0 - f),
                do * o * (1.0 - o),
                dg * (1.0 - g * g),
            ], axis=1)
            dW_x += x[:, t].T @ da
            dW_h += h_prev.T @ da
            db += da.sum(axis=0)
            dx[:, t] = da @ W_x.T
            dh_next = da @ W_h.T
        self.grads["W_x"] += dW_x
        self.grads["W_h"] += dW_h
        self.grads["b"] += db
        return dx


class LSTMStack(Layer):
    """
    Stacked LSTM layers; the head reads the top layer's last hidden state
    """

    def __init__(self, input_size: int, hidden_size: int, num_layers: int, rng: Optional[np.random.Generator] = None):
        super().__init__()
        if num_layers <= 0:
            raise InvalidArgumentError(f"num_layers must be positive, got {num_layers}")
        rng = rng or np.random.default_rng(0)
        self.layers: List[LSTMLayer] = []
        size = input_size
        for _ in range(int(num_layers)):
            self.layers.append(LSTMLayer(size, hidden_size, rng))
            size = hidden_size
        self.hidden_size = int(hidden_size)
        self._final_states: Optional[np.ndarray] = None

    def named_params(self) -> Dict[str, np.ndarray]:
        return {f"lstm{k}.{name}": v for k, layer in enumerate(self.layers) for name, v in layer.params.items()}

    def named_grads(self) -> Dict[str, np.ndarray]:
        return {f"lstm{k}.{name}": v for k, layer in enumerate(self.layers) for name, v in layer.grads.items()}

    def zero_grad(self) -> None:
        for layer in self.layers:
            layer.zero_grad()

    def forward(self, x: np.ndarray) -> np.ndarray:
        """B x W x D -> B x H (top layer, last time step)"""
        out = x
        finals = []
        for layer in self.layers:
            out = layer.forward(out)
            finals.append(out[:, -1])
        self._final_states = np.stack(finals)
        self._cache = out.shape
        return out[:, -1]

    @property
    def final_states(self) -> np.ndarray:
        """L x B x H last hidden state of every layer from the latest forward pass"""
        if self._final_states is None:
            raise ModelStateError("No forward pass recorded")
        return self._final_states

    def backward(self, grad: np.ndarray) -> np.ndarray:
        shape = self._require_cache()
        g = np.zeros(shape)
        g[:, -1] = grad
        for layer in reversed(self.layers):
            g = layer.backward(g)
        return g

    def clear_cache(self) -> None:
        super().clear_cache()
        for layer in self.layers:
            layer.clear_cache()
