"""
Online Multilayer Perceptron
ReLU hidden layers, sigmoid output, one Adam step per observation (NumPy)
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.special import expit

from src.services.regression.base import SequentialRegressor

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass
class MlpParams:
    """Layer weights W_l (out x in) and biases b_l (out,)"""
    weights: List[np.ndarray]
    biases: List[np.ndarray]

    def copy(self) -> "MlpParams":
        return MlpParams([w.copy() for w in self.weights], [b.copy() for b in self.biases])

    @property
    def layer_sizes(self) -> List[int]:
        return [self.weights[0].shape[1]] + [w.shape[0] for w in self.weights]


@dataclass
class AdamState:
    m_w: List[np.ndarray]
    v_w: List[np.ndarray]
    m_b: List[np.ndarray]
    v_b: List[np.ndarray]
    step: int = 0

    @classmethod
    def zeros_like(cls, params: MlpParams) -> "AdamState":
        return cls(
            m_w=[np.zeros_like(w) for w in params.weights],
            v_w=[np.zeros_like(w) for w in params.weights],
            m_b=[np.zeros_like(b) for b in params.biases],
            v_b=[np.zeros_like(b) for b in params.biases],
        )


def init_mlp(layer_sizes: Sequence[int], rng: np.random.Generator) -> MlpParams:
    """He-scaled normal weights, zero biases"""
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        weights.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpParams(weights, biases)


def zero_mlp(layer_sizes: Sequence[int]) -> MlpParams:
    weights = [np.zeros((o, i)) for i, o in zip(layer_sizes[:-1], layer_sizes[1:])]
    biases = [np.zeros(o) for o in layer_sizes[1:]]
    return MlpParams(weights, biases)


def _forward_pass(params: MlpParams, x: np.ndarray) -> Tuple[List[np.ndarray], List[np.ndarray], float]:
    activations = [np.asarray(x, dtype=float)]
    pre_activations = []
    a = activations[0]
    last = len(params.weights) - 1
    for idx, (w, b) in enumerate(zip(params.weights, params.biases)):
        z = w @ a + b
        pre_activations.append(z)
        if idx < last:
            a = np.maximum(z, 0.0)
            activations.append(a)
    out = float(expit(pre_activations[-1][0]))
    return activations, pre_activations, out


def mlp_forward(params: MlpParams, x: np.ndarray) -> float:
    """Network output in (0, 1)"""
    return _forward_pass(params, x)[2]


def mlp_loss(params: MlpParams, x: np.ndarray, target: float) -> float:
    """Squared loss 0.5 * (output - target)^2"""
    out = mlp_forward(params, x)
    return 0.5 * (out - target) ** 2


def mlp_gradients(params: MlpParams, x: np.ndarray, target: float) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Backpropagated gradients of mlp_loss with respect to weights and biases"""
    activations, pre_activations, out = _forward_pass(params, x)
    n_layers = len(params.weights)
    grad_w: List[np.ndarray] = [np.empty(0)] * n_layers
    grad_b: List[np.ndarray] = [np.empty(0)] * n_layers

    delta = np.array([(out - target) * out * (1.0 - out)])
    for idx in range(n_layers - 1, -1, -1):
        grad_w[idx] = np.outer(delta, activations[idx])
        grad_b[idx] = delta.copy()
        if idx > 0:
            delta = (params.weights[idx].T @ delta) * (pre_activations[idx - 1] > 0.0)
    return grad_w, grad_b


def mlp_update(
    params: MlpParams,
    x: np.ndarray,
    target: float,
    adam: AdamState,
    lr: float,
) -> Tuple[MlpParams, AdamState]:
    """
    One Adam step on the squared loss for a single (x, target) pair

    Returns:
        New parameters and the advanced optimizer state
    """
    grad_w, grad_b = mlp_gradients(params, x, target)
    adam.step += 1
    bias1 = 1.0 - ADAM_BETA1 ** adam.step
    bias2 = 1.0 - ADAM_BETA2 ** adam.step

    new = params.copy()
    for idx in range(len(new.weights)):
        for value, grad, m, v in (
            (new.weights[idx], grad_w[idx], adam.m_w[idx], adam.v_w[idx]),
            (new.biases[idx], grad_b[idx], adam.m_b[idx], adam.v_b[idx]),
        ):
            m *= ADAM_BETA1
            m += (1.0 - ADAM_BETA1) * grad
            v *= ADAM_BETA2
            v += (1.0 - ADAM_BETA2) * grad * grad
            value -= lr * (m / bias1) / (np.sqrt(v / bias2) + ADAM_EPS)
    return new, adam


class MlpRegressor(SequentialRegressor):
    """
    Network regressor whose sigmoid output is mapped affinely onto [lo, hi]
    """

    def __init__(
        self,
        dimension: int,
        hidden: Sequence[int],
        lr: float,
        lo: float,
        hi: float,
        default: float,
        rng: np.random.Generator,
    ):
        super().__init__(lo, hi, default)
        if not hi > lo:
            raise ValueError("network regressor needs a non-degenerate output range")
        self.lr = lr
        self.params = init_mlp([dimension, *hidden, 1], rng)
        self.adam = AdamState.zeros_like(self.params)

    def _predict(self, x: np.ndarray) -> float:
        if self.n_updates == 0:
            return self.default
        return self.lo + (self.hi - self.lo) * mlp_forward(self.params, x)

    def _update(self, x: np.ndarray, target: float) -> None:
        unit_target = (target - self.lo) / (self.hi - self.lo)
        self.params, self.adam = mlp_update(self.params, x, unit_target, self.adam, self.lr)
