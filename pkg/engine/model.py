"""
Forecasting networks: LSTM backbone and the feed-forward baseline
"""

from typing import Dict, List, Optional

import numpy as np

from config.logging import get_logger
from config.settings import EVAL_BATCH_SIZE
from core.exceptions import InvalidArgumentError, ModelStateError
from core.models import Architecture, ForecastOutput, ModelSpec
from .heads import OutputHead
from .layers import Layer, Linear, LSTMStack, Tanh

logger = get_logger(__name__)


class Network:
    """Common parameter bookkeeping for both architectures"""

    def __init__(self, spec: ModelSpec):
        self.spec = spec
        self.head: Optional[OutputHead] = None
        self._forward_done = False

    def _blocks(self) -> Dict[str, Layer]:
        raise NotImplementedError

    def parameters(self) -> Dict[str, np.ndarray]:
        """Name -> array (live references, stable order)"""
        out: Dict[str, np.ndarray] = {}
        for prefix, block in self._blocks().items():
            if isinstance(block, LSTMStack):
                out.update(block.named_params())
            else:
                out.update({f"{prefix}.{k}": v for k, v in block.params.items()})
        return out

    def gradients(self) -> Dict[str, np.ndarray]:
        out: Dict[str, np.ndarray] = {}
        for prefix, block in self._blocks().items():
            if isinstance(block, LSTMStack):
                out.update(block.named_grads())
            else:
                out.update({f"{prefix}.{k}": v for k, v in block.grads.items()})
        return out

    def zero_grad(self) -> None:
        for block in self._blocks().values():
            block.zero_grad()

    def param_count(self) -> int:
        return int(sum(v.size for v in self.parameters().values()))

    def load_parameters(self, values: Dict[str, np.ndarray]) -> None:
        """Copy values into the live parameter arrays"""
        params = self.parameters()
        unknown = sorted(set(values) - set(params))
        missing = sorted(set(params) - set(values))
        if unknown or missing:
            raise InvalidArgumentError(f"Parameter mismatch: missing={missing}, unknown={unknown}")
        for name, arr in params.items():
            value = np.asarray(values[name], dtype=float)
            if value.shape != arr.shape:
                raise InvalidArgumentError(f"Parameter {name}: expected shape {arr.shape}, got {value.shape}")
            arr[...] = value

    def _check_inputs(self, inputs: np.ndarray) -> np.ndarray:
        x = np.asarray(inputs, dtype=float)
        expected = (self.spec.window, self.spec.num_features)
        if x.ndim != 3 or x.shape[1:] != expected:
            raise InvalidArgumentError(
                f"Input must be B x W x D with W={expected[0]}, D={expected[1]}; got shape {x.shape}"
            )
        return x

    def _encode(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _encode_backward(self, grad: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def forward(self, inputs: np.ndarray, future_clear_sky: np.ndarray) -> ForecastOutput:
        """
        Args:
            inputs: B x W x D scaled features
            future_clear_sky: B x P scaled clear sky for the target hours

        Returns:
            ForecastOutput for the configured head
        """
        x = self._check_inputs(inputs)
        hidden = self._encode(x)
        out = self.head.forward(hidden, future_clear_sky)
        self._forward_done = True
        return out

    def backward(self, grad) -> np.ndarray:
        """
        Accumulate parameter gradients from dL/d(forecast)

        Raises:
            ModelStateError: without a preceding forward pass
        """
        if not self._forward_done:
            raise ModelStateError("backward called without a recorded forward pass")
        dh = self.head.backward(grad)
        dx = self._encode_backward(dh)
        self._forward_done = False
        return dx

    def clear_cache(self) -> None:
        for block in self._blocks().values():
            block.clear_cache()
        self._forward_done = False

    def predict(self, inputs: np.ndarray, future_clear_sky: np.ndarray,
                batch_size: int = EVAL_BATCH_SIZE) -> ForecastOutput:
        """Forward pass in chunks; no cache is kept"""
        x = self._check_inputs(inputs)
        cs = np.asarray(future_clear_sky, dtype=float)
        if x.shape[0] == 0:
            raise InvalidArgumentError("predict called with an empty batch")
        outputs: List[ForecastOutput] = []
        for start in range(0, x.shape[0], batch_size):
            stop = start + batch_size
            outputs.append(self.forward(x[start:stop], cs[start:stop]))
        self.clear_cache()
        return ForecastOutput.concatenate(outputs)


class ForecastNetwork(Network):
    """Stacked LSTM; the top layer's last hidden state feeds the output head"""

    def __init__(self, spec: ModelSpec, rng: Optional[np.random.Generator] = None):
        super().__init__(spec)
        rng = rng if rng is not None else np.random.default_rng(spec.seed)
        self.lstm = LSTMStack(spec.num_features, spec.hidden, spec.layers, rng)
        self.head = OutputHead(
            spec.hidden, spec.horizon, spec.head,
            quantiles=spec.quantiles,
            sort_quantiles=spec.sort_quantiles,
            rng=rng,
        )

    def _blocks(self) -> Dict[str, Layer]:
        return {"lstm": self.lstm, "head": self.head}

    def _encode(self, x: np.ndarray) -> np.ndarray:
        return self.lstm.forward(x)

    def _encode_backward(self, grad: np.ndarray) -> np.ndarray:
        return self.lstm.backward(grad)

    def hidden_states(self, inputs: np.ndarray) -> np.ndarray:
        """L x B x H final hidden state of every layer"""
        self.lstm.forward(self._check_inputs(inputs))
        states = self.lstm.final_states
        self.lstm.clear_cache()
        return states


class MLPNetwork(Network):
    """Flattened window -> tanh hidden layer -> P outputs, trained on MSE"""

    def __init__(self, spec: ModelSpec, rng: Optional[np.random.Generator] = None):
        super().__init__(spec)
        rng = rng if rng is not None else np.random.default_rng(spec.seed)
        self.hidden_layer = Linear(spec.window * spec.num_features, spec.hidden, rng)
        self.activation = Tanh()
        self.head = OutputHead(spec.hidden, spec.horizon, spec.head, inject=False, rng=rng)
        self._input_shape = None

    def _blocks(self) -> Dict[str, Layer]:
        return {"hidden": self.hidden_layer, "act": self.activation, "head": self.head}

    def _encode(self, x: np.ndarray) -> np.ndarray:
        self._input_shape = x.shape
        return self.activation.forward(self.hidden_layer.forward(x.reshape(x.shape[0], -1)))

    def _encode_backward(self, grad: np.ndarray) -> np.ndarray:
        dx = self.hidden_layer.backward(self.activation.backward(grad))
        return dx.reshape(self._input_shape)


def build_network(spec: ModelSpec, rng: Optional[np.random.Generator] = None) -> Network:
    """
    Instantiate the network described by a spec

    Initialisation draws from `rng`, or from default_rng(spec.seed) when omitted.
    """
    spec.validate()
    if spec.arch is Architecture.MLP:
        net = MLPNetwork(spec, rng)
    else:
        net = ForecastNetwork(spec, rng)
    logger.debug(f"Built {spec.arch.value} network with head {spec.head.value}: {net.param_count()} parameters")
    return net
