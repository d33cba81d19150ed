"""
Two-layer Q-network (input -> ReLU hidden -> |A| outputs) in NumPy, with
explicit backpropagation of the Huber TD loss and Adam/SGD updates.
"""

import numpy as np

from . import config
from .errors import InvalidParameterError

PARAM_NAMES = ("W1", "b1", "W2", "b2")


def huber(residual, delta=config.HUBER_DELTA):
    abs_r = np.abs(residual)
    return np.where(abs_r <= delta, 0.5 * residual**2, delta * (abs_r - 0.5 * delta))


def huber_grad(residual, delta=config.HUBER_DELTA):
    return np.clip(residual, -delta, delta)


def _softmax(z):
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


class QNetwork:
    def __init__(
        self,
        input_size,
        hidden_size,
        num_actions,
        output_activation=config.DEFAULT_OUTPUT_ACTIVATION,
        rng=None,
    ):
        if output_activation not in config.OUTPUT_ACTIVATIONS:
            raise InvalidParameterError(
                f"Unknown output activation '{output_activation}'"
            )
        self.input_size = int(input_size)
        self.hidden_size = int(hidden_size)
        self.num_actions = int(num_actions)
        self.output_activation = output_activation

        if rng is None:
            self.params = {
                "W1": np.zeros((self.input_size, self.hidden_size)),
                "b1": np.zeros(self.hidden_size),
                "W2": np.zeros((self.hidden_size, self.num_actions)),
                "b2": np.zeros(self.num_actions),
            }
        else:
            # He initialisation for the ReLU layer, Glorot-style for the output.
            self.params = {
                "W1": rng.normal(0.0, np.sqrt(2.0 / self.input_size), (self.input_size, self.hidden_size)),
                "b1": np.zeros(self.hidden_size),
                "W2": rng.normal(0.0, np.sqrt(1.0 / self.hidden_size), (self.hidden_size, self.num_actions)),
                "b2": np.zeros(self.num_actions),
            }

    @property
    def layer_dims(self):
        return [self.input_size, self.hidden_size, self.num_actions]

    def copy(self):
        clone = QNetwork(
            self.input_size,
            self.hidden_size,
            self.num_actions,
            output_activation=self.output_activation,
        )
        clone.load_params(self.params)
        return clone

    def load_params(self, params):
        self.params = {name: np.array(params[name], dtype=float, copy=True) for name in PARAM_NAMES}

    def _check_input(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.input_size:
            raise InvalidParameterError(
                f"Q-network expects {self.input_size} inputs, got {x.shape[-1]}"
            )
        return x

    def _forward_cached(self, x):
        p = self.params
        z1 = x @ p["W1"] + p["b1"]
        h = np.maximum(z1, 0.0)
        z2 = h @ p["W2"] + p["b2"]
        q = _softmax(z2) if self.output_activation == "softmax" else z2
        return z1, h, q

    def forward(self, x):
        """Q-values for a single state (1-D) or a batch of states (2-D)."""
        x = self._check_input(x)
        single = x.ndim == 1
        _, _, q = self._forward_cached(np.atleast_2d(x))
        return q[0] if single else q

    def loss_and_gradients(self, x, actions, targets, delta=config.HUBER_DELTA):
        """
        Mean Huber loss of Q(x, a) against the targets, and its gradients.

        Args:
            x (numpy.ndarray): (B, input_size) states.
            actions (numpy.ndarray): (B,) action indices.
            targets (numpy.ndarray): (B,) TD targets.
            delta (float): Huber threshold.

        Returns:
            tuple: (float, dict) - the loss and one gradient array per parameter.
        """
        x = np.atleast_2d(self._check_input(x))
        actions = np.asarray(actions, dtype=np.int64)
        targets = np.asarray(targets, dtype=float)
        batch = x.shape[0]
        rows = np.arange(batch)

        z1, h, q = self._forward_cached(x)
        residual = q[rows, actions] - targets
        loss = float(np.mean(huber(residual, delta)))

        dq = np.zeros_like(q)
        dq[rows, actions] = huber_grad(residual, delta) / batch
        if self.output_activation == "softmax":
            dz2 = q * (dq - np.sum(dq * q, axis=1, keepdims=True))
        else:
            dz2 = dq

        p = self.params
        dh = dz2 @ p["W2"].T
        dz1 = dh * (z1 > 0)
        grads = {
            "W1": x.T @ dz1,
            "b1": dz1.sum(axis=0),
            "W2": h.T @ dz2,
            "b2": dz2.sum(axis=0),
        }
        return loss, grads

    def all_finite(self):
        return all(np.all(np.isfinite(v)) for v in self.params.values())


class SgdOptimizer:
    def __init__(self, learning_rate=config.LEARNING_RATE):
        self.learning_rate = learning_rate

    def step(self, params, grads):
        for name in PARAM_NAMES:
            params[name] -= self.learning_rate * grads[name]


class AdamOptimizer:
    def __init__(self, learning_rate=config.LEARNING_RATE, beta1=0.9, beta2=0.999, eps=1e-8):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {}
        self.v = {}

    def step(self, params, grads):
        self.t += 1
        bias1 = 1.0 - self.beta1**self.t
        bias2 = 1.0 - self.beta2**self.t
        for name in PARAM_NAMES:
            g = grads[name]
            m = self.m.get(name, np.zeros_like(g))
            v = self.v.get(name, np.zeros_like(g))
            m = self.beta1 * m + (1.0 - self.beta1) * g
            v = self.beta2 * v + (1.0 - self.beta2) * g * g
            self.m[name], self.v[name] = m, v
            params[name] -= self.learning_rate * (m / bias1) / (np.sqrt(v / bias2) + self.eps)


def make_optimizer(name, learning_rate):
    if name == "adam":
        return AdamOptimizer(learning_rate)
    if name == "sgd":
        return SgdOptimizer(learning_rate)
    raise InvalidParameterError(f"Unknown optimizer '{name}'")
