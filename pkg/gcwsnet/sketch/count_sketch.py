"""
Count-sketch compression of one-hot features.

Each input position is sent to a keyed bin in ``[0, B)`` with a keyed ±1 sign;
both depend only on ``(seed, position)``. A sample's sketch is the signed bin
count of its set positions, so sketches are integers and linear in the input.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sp
from pydantic import Field

from gcwsnet.config.base import SEED_MAX, FrozenConfig
from gcwsnet.core.errors import ConfigMismatchError, InvalidParameterError
from gcwsnet.core.random import Stream, keyed_bits
from gcwsnet.sketch.onehot import EncodedFeatures

logger = logging.getLogger(__name__)


class CountSketchConfig(FrozenConfig):
    """B bins and the seed of the position -> (bin, sign) map."""

    B: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, le=SEED_MAX)

    def reduction_factor(self, width: int) -> float:
        """m = d / B (need not be an integer)."""
        return width / self.B


@dataclass(frozen=True, eq=False)
class SketchedFeatures:
    values: np.ndarray
    config: CountSketchConfig

    def dot(self, other: "SketchedFeatures") -> int:
        if self.config != other.config:
            raise ConfigMismatchError(
                f"sketches from different configs: {self.config} vs {other.config}"
            )
        return int(np.dot(self.values, other.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SketchedFeatures):
            return NotImplemented
        return self.config == other.config and np.array_equal(self.values, other.values)


def bins_and_signs(positions: np.ndarray, cs: CountSketchConfig) -> Tuple[np.ndarray, np.ndarray]:
    positions = np.asarray(positions, dtype=np.int64)
    bins = (keyed_bits(cs.seed, Stream.SKETCH_BIN, positions) % np.uint64(cs.B)).astype(np.int64)
    top = keyed_bits(cs.seed, Stream.SKETCH_SIGN, positions) >> np.uint64(63)
    signs = np.where(top == 1, -1, 1).astype(np.int64)
    return bins, signs


def count_sketch_positions(positions, cs: CountSketchConfig) -> np.ndarray:
    """Sketch of any multiset of positions (repeats add up)."""
    positions = np.asarray(positions, dtype=np.int64).ravel()
    out = np.zeros(cs.B, dtype=np.int64)
    if positions.size:
        bins, signs = bins_and_signs(positions, cs)
        np.add.at(out, bins, signs)
    return out


def count_sketch(f: EncodedFeatures, cs: CountSketchConfig) -> SketchedFeatures:
    values = count_sketch_positions(f.positions, cs)
    values.setflags(write=False)
    return SketchedFeatures(values=values, config=cs)


def count_sketch_batch(positions: np.ndarray, cs: CountSketchConfig) -> np.ndarray:
    """``(n, B)`` sketch matrix for an ``(n, k)`` position matrix."""
    positions = np.asarray(positions, dtype=np.int64)
    n = positions.shape[0]
    out = np.zeros((n, cs.B), dtype=np.int64)
    if positions.size:
        bins, signs = bins_and_signs(positions, cs)
        rows = np.broadcast_to(np.arange(n)[:, None], positions.shape)
        np.add.at(out, (rows, bins), signs)
    logger.info("sketched %d rows into %d bins", n, cs.B)
    return out


def count_sketch_csr(positions: np.ndarray, cs: CountSketchConfig) -> sp.csr_matrix:
    """Same as ``count_sketch_batch`` but sparse; cancelled bins are dropped."""
    positions = np.asarray(positions, dtype=np.int64)
    n, k = positions.shape
    bins, signs = bins_and_signs(positions, cs)
    rows = np.repeat(np.arange(n), k)
    m = sp.coo_matrix(
        (signs.ravel().astype(np.float64), (rows, bins.ravel())), shape=(n, cs.B)
    ).tocsr()
    m.sum_duplicates()
    m.eliminate_zeros()
    return m


def estimate_pb(z: SketchedFeatures, w: SketchedFeatures, k: int) -> float:
    """Unbiased estimate of the b-bit collision probability, ``<z, w> / k``."""
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    if z.values.size != w.values.size:
        raise ConfigMismatchError(f"B differs: {z.values.size} vs {w.values.size}")
    return z.dot(w) / k


__all__ = [
    "CountSketchConfig",
    "SketchedFeatures",
    "bins_and_signs",
    "count_sketch_positions",
    "count_sketch",
    "count_sketch_batch",
    "count_sketch_csr",
    "estimate_pb",
]
