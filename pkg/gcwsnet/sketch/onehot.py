"""
One-hot block encoding of GCWS codes.

Block j occupies positions ``[j * 2**(b+tbits), (j+1) * 2**(b+tbits))`` and its
single set position is ``j * block_size + code_j``. The printed form used in
write-ups enumerates each block right to left; ``render_blocks`` produces it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from gcwsnet.core.errors import CorruptInputError
from gcwsnet.gcws.config import GcwsConfig
from gcwsnet.gcws.hashing import HashedVector


@dataclass(frozen=True, eq=False)
class EncodedFeatures:
    """Sparse binary vector with exactly one set position per block."""

    block_size: int
    k: int
    positions: np.ndarray

    @property
    def width(self) -> int:
        return self.block_size * self.k

    def dot(self, other: "EncodedFeatures") -> int:
        """Inner product, i.e. the number of blocks whose codes agree."""
        return int(np.count_nonzero(self.positions == other.positions))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.width, dtype=np.int8)
        out[self.positions] = 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, EncodedFeatures):
            return NotImplemented
        return self.block_size == other.block_size and np.array_equal(
            self.positions, other.positions
        )


def one_hot_batch(codes: np.ndarray, cfg: GcwsConfig) -> np.ndarray:
    """Set positions for an ``(n, k)`` code matrix."""
    codes = np.asarray(codes, dtype=np.int64)
    if codes.ndim == 1:
        codes = codes[None, :]
    if codes.shape[1] != cfg.k:
        raise CorruptInputError(f"expected {cfg.k} codes per row, got {codes.shape[1]}")
    bad = (codes < 0) | (codes >= cfg.block_size)
    if np.any(bad):
        row = int(np.flatnonzero(bad.any(axis=1))[0]) + 1
        raise CorruptInputError(f"code outside [0, {cfg.block_size})", row=row)
    offsets = np.arange(cfg.k, dtype=np.int64) * cfg.block_size
    return codes + offsets[None, :]


def one_hot(h: HashedVector, cfg: Optional[GcwsConfig] = None) -> EncodedFeatures:
    cfg = cfg or h.config
    positions = one_hot_batch(h.codes, cfg)[0]
    positions.setflags(write=False)
    return EncodedFeatures(block_size=cfg.block_size, k=cfg.k, positions=positions)


def render_blocks(f: EncodedFeatures, sep: str = "  ") -> str:
    """Blocks left to right, each block's positions printed in descending order."""
    dense = f.to_dense().reshape(f.k, f.block_size)[:, ::-1]
    return sep.join(" ".join(str(int(x)) for x in block) for block in dense)


__all__ = ["EncodedFeatures", "one_hot", "one_hot_batch", "render_blocks"]
