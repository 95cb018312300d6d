"""
Feature containers consumed by the trainer.

The first layer is the only place where input representation matters:
``MatrixFeatures`` does a (sparse or dense) matrix product, ``OneHotFeatures``
adds k rows of the weight matrix per sample and never multiplies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import scipy.sparse as sp

from gcwsnet.core.errors import CorruptInputError

Matrix = Union[np.ndarray, sp.csr_matrix]


@dataclass(frozen=True)
class RowGrad:
    """Gradient of a (width, H) matrix that is zero outside ``rows``.

    ``rows`` is sorted and unique; ``values[i]`` is the gradient of row ``rows[i]``.
    """

    rows: np.ndarray
    values: np.ndarray
    width: int

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.width, self.values.shape[1]), dtype=np.float64)
        out[self.rows] = self.values
        return out


def dense_grad(grad: Union[np.ndarray, RowGrad]) -> np.ndarray:
    return grad.to_dense() if isinstance(grad, RowGrad) else grad


def sparse_binary_forward(
    positions: np.ndarray, W: np.ndarray, bias: Optional[np.ndarray] = None
) -> np.ndarray:
    """Pre-activations ``sum_{i in positions} W[i] (+ bias)``.

    ``positions`` is ``(k,)`` for one sample or ``(n, k)``; rows of W are added in
    ascending position order.
    """
    positions = np.asarray(positions, dtype=np.int64)
    if positions.size and (positions.min() < 0 or positions.max() >= W.shape[0]):
        raise CorruptInputError(f"feature position outside [0, {W.shape[0]})")
    ordered = np.sort(positions, axis=-1)
    out = W[ordered].sum(axis=-2)
    if bias is not None:
        out = out + bias
    return out


@dataclass(frozen=True)
class MatrixFeatures:
    """Dense ndarray or CSR matrix, one row per sample."""

    matrix: Matrix

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def width(self) -> int:
        return int(self.matrix.shape[1])

    def rows(self, idx: np.ndarray) -> "MatrixFeatures":
        return MatrixFeatures(self.matrix[idx])

    def first_layer(self, W: np.ndarray, bias: np.ndarray) -> np.ndarray:
        return np.asarray(self.matrix @ W) + bias

    def weight_grad(self, dZ: np.ndarray) -> np.ndarray:
        return np.asarray(self.matrix.T @ dZ)

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray() if sp.issparse(self.matrix) else np.asarray(self.matrix)


@dataclass(frozen=True)
class OneHotFeatures:
    """``(n, k)`` set positions into a binary input of width ``width``."""

    positions: np.ndarray
    width: int

    def __post_init__(self):
        if self.positions.size and (
            self.positions.min() < 0 or self.positions.max() >= self.width
        ):
            raise CorruptInputError(f"feature position outside [0, {self.width})")

    @property
    def n(self) -> int:
        return int(self.positions.shape[0])

    def rows(self, idx: np.ndarray) -> "OneHotFeatures":
        return OneHotFeatures(self.positions[idx], self.width)

    def first_layer(self, W: np.ndarray, bias: np.ndarray) -> np.ndarray:
        return sparse_binary_forward(self.positions, W, bias)

    def weight_grad(self, dZ: np.ndarray) -> RowGrad:
        """Accumulate ``dZ`` into the rows that appear in this batch only."""
        rows, inverse = np.unique(self.positions.ravel(), return_inverse=True)
        values = np.zeros((rows.size, dZ.shape[1]), dtype=np.float64)
        np.add.at(values, inverse.reshape(self.positions.shape), dZ[:, None, :])
        return RowGrad(rows, values, self.width)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.width), dtype=np.float64)
        np.put_along_axis(out, self.positions, 1.0, axis=1)
        return out


Features = Union[MatrixFeatures, OneHotFeatures]


__all__ = [
    "sparse_binary_forward",
    "RowGrad",
    "dense_grad",
    "MatrixFeatures",
    "OneHotFeatures",
    "Features",
]
