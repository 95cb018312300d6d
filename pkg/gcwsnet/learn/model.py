"""
Softmax regression and ReLU MLPs in numpy float64, with Adam.
"""

from __future__ import annotations

import copy
import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from gcwsnet.core.errors import InvalidConfigError
from gcwsnet.core.random import Stream, keyed_generator
from gcwsnet.learn.config import NetConfig
from gcwsnet.learn.features import Features, MatrixFeatures, RowGrad, dense_grad

logger = logging.getLogger(__name__)

Grads = List[Tuple[Union[np.ndarray, RowGrad], np.ndarray]]


def _log_softmax(Z: np.ndarray) -> np.ndarray:
    Z = Z - Z.max(axis=1, keepdims=True)
    return Z - np.log(np.exp(Z).sum(axis=1, keepdims=True))


class Model:
    """Layer weights ``W[l]`` of shape (fan_in, fan_out) and biases ``b[l]``."""

    def __init__(self, weights: Sequence[np.ndarray], biases: Sequence[np.ndarray]):
        if len(weights) != len(biases) or not weights:
            raise InvalidConfigError("a model needs one bias per weight matrix")
        for W, b, nxt in zip(weights, biases, list(weights[1:]) + [None]):
            if b.shape != (W.shape[1],) or (nxt is not None and nxt.shape[0] != W.shape[1]):
                raise InvalidConfigError("inconsistent layer shapes")
        self.weights = [np.asarray(W, dtype=np.float64) for W in weights]
        self.biases = [np.asarray(b, dtype=np.float64) for b in biases]

    @classmethod
    def initialize(cls, width: int, n_classes: int, net: NetConfig) -> "Model":
        """Fan-in scaled uniform weights from the seeded init stream, zero biases."""
        if n_classes < 2:
            raise InvalidConfigError(f"need at least 2 classes, got {n_classes}")
        sizes = [int(width), *net.hidden_sizes, int(n_classes)]
        rng = keyed_generator(net.seed, Stream.TRAIN_INIT)
        weights, biases = [], []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            limit = 1.0 / math.sqrt(fan_in)
            weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
            biases.append(np.zeros(fan_out))
        return cls(weights, biases)

    # -- shape ---------------------------------------------------------------

    @property
    def input_width(self) -> int:
        return int(self.weights[0].shape[0])

    @property
    def n_classes(self) -> int:
        return int(self.weights[-1].shape[1])

    @property
    def n_hidden_layers(self) -> int:
        return len(self.weights) - 1

    @property
    def shapes(self) -> List[Tuple[int, int]]:
        return [tuple(W.shape) for W in self.weights]

    def params(self) -> List[np.ndarray]:
        out = []
        for W, b in zip(self.weights, self.biases):
            out.extend([W, b])
        return out

    def copy(self) -> "Model":
        return copy.deepcopy(self)

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(p)) for p in self.params())

    # -- forward / backward --------------------------------------------------

    def _forward(self, X: Features) -> List[np.ndarray]:
        """Post-activations of every hidden layer, then the logits."""
        acts = []
        Z = X.first_layer(self.weights[0], self.biases[0])
        for W, b in zip(self.weights[1:], self.biases[1:]):
            H = np.maximum(Z, 0.0)
            acts.append(H)
            Z = H @ W + b
        acts.append(Z)
        return acts

    def logits(self, X: Features) -> np.ndarray:
        return self._forward(X)[-1]

    def predict_proba(self, X: Features) -> np.ndarray:
        return np.exp(_log_softmax(self.logits(X)))

    def predict(self, X: Features) -> np.ndarray:
        return np.argmax(self.logits(X), axis=1)

    def accuracy(self, X: Features, y: np.ndarray) -> float:
        if X.n == 0:
            return float("nan")
        return float(np.mean(self.predict(X) == np.asarray(y)))

    def loss(self, X: Features, y: np.ndarray) -> float:
        logp = _log_softmax(self.logits(X))
        return float(-logp[np.arange(X.n), y].mean())

    def embed(self, X: Features) -> np.ndarray:
        """Activations of the last hidden layer."""
        if self.n_hidden_layers == 0:
            raise InvalidConfigError("softmax regression has no hidden layer to embed")
        return self._forward(X)[-2]

    def loss_and_grads(self, X: Features, y: np.ndarray) -> Tuple[float, Grads]:
        """Mean softmax cross-entropy and its gradients, first layer first."""
        y = np.asarray(y, dtype=np.int64)
        acts = self._forward(X)
        logp = _log_softmax(acts[-1])
        n = X.n
        loss = float(-logp[np.arange(n), y].mean())

        dZ = np.exp(logp)
        dZ[np.arange(n), y] -= 1.0
        dZ /= n

        grads: Grads = []
        for layer in range(len(self.weights) - 1, 0, -1):
            H = acts[layer - 1]
            grads.append((H.T @ dZ, dZ.sum(axis=0)))
            dZ = (dZ @ self.weights[layer].T) * (H > 0)
        grads.append((X.weight_grad(dZ), dZ.sum(axis=0)))
        grads.reverse()
        return loss, grads


class Adam:
    """Adam with beta1=0.9, beta2=0.999, eps=1e-8."""

    def __init__(self, lr: float, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m: Optional[List[np.ndarray]] = None
        self._v: Optional[List[np.ndarray]] = None

    def step(self, model: Model, grads: Grads) -> None:
        params = model.params()
        flat = [g for pair in grads for g in pair]
        if self._m is None:
            self._m = [np.zeros_like(p) for p in params]
            self._v = [np.zeros_like(p) for p in params]
        self.t += 1
        c1 = 1.0 - self.beta1**self.t
        c2 = 1.0 - self.beta2**self.t
        for p, g, m, v in zip(params, flat, self._m, self._v):
            m *= self.beta1
            v *= self.beta2
            if isinstance(g, RowGrad):
                m[g.rows] += (1.0 - self.beta1) * g.values
                v[g.rows] += (1.0 - self.beta2) * g.values * g.values
            else:
                m += (1.0 - self.beta1) * g
                v += (1.0 - self.beta2) * g * g
            p -= self.lr * (m / c1) / (np.sqrt(v / c2) + self.eps)


def gradient_check(model: Model, X: Features, y: np.ndarray, eps: float = 1e-6) -> float:
    """Max over parameter arrays of ``|g - g_fd| / (|g| + |g_fd|)`` (norm-wise).

    Central differences on every scalar parameter; meant for small models.
    """
    _, grads = model.loss_and_grads(X, y)
    analytic = [dense_grad(g) for pair in grads for g in pair]
    worst = 0.0
    for p, g in zip(model.params(), analytic):
        numeric = np.zeros_like(p)
        for idx in np.ndindex(*p.shape):
            old = p[idx]
            p[idx] = old + eps
            up = model.loss(X, y)
            p[idx] = old - eps
            down = model.loss(X, y)
            p[idx] = old
            numeric[idx] = (up - down) / (2.0 * eps)
        denom = np.linalg.norm(g) + np.linalg.norm(numeric)
        if denom > 0:
            worst = max(worst, float(np.linalg.norm(g - numeric) / denom))
    return worst


def dense_features(X: np.ndarray) -> MatrixFeatures:
    return MatrixFeatures(np.asarray(X, dtype=np.float64))


__all__ = ["Model", "Adam", "gradient_check", "dense_features"]
